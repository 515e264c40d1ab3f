// The truncated harmonic-balance systems of both chemotaxis models, in two
// independent implementations used as mutual oracles:
//
//   * residuals_model1 / residuals_model2 - the coefficient equations typed
//     out term by term (beta_i always substituted by alpha_i/(1+i^2 d_c k^2));
//   * generic_residuals - the same equations regenerated mechanically from
//     the stationary operator with the series algebra.
//
// For Model 2 the rational chemotaxis term is cleared by multiplying the
// whole stationary equation by c(x)^2, so harmonic matching applies to a
// trigonometric polynomial:
//   Rtilde = (d_n n'' + r n (1-n)) c^2 + chi0 (n c'^2 - n c c'' - n' c c').
//
// Equation tags are harmonic indices. The inverse-mode tag sets follow the
// printed systems: Model 1 uses {1}, {1,2,3}, {1..5} for M = 1,2,3; Model 2
// uses {0..3}, {0..4} for M = 1,2. Harmonics above the tag set are reported
// as truncation leakage, never solved.

#pragma once

#include <optional>
#include <vector>

#include "turinv/model.hpp"

namespace turinv {

// beta_i = alpha_i / (1 + i^2 d_c k^2), i >= 1. (i = 0 is the separate
// identity beta_0 = alpha_0.)
double beta_relation(double alpha_i, int i, double d_c, double k);

// Inverse-mode harmonic tags of the printed system for (model, M).
std::vector<int> system_tags(Model model, int M);

// Hand-transcribed coefficient equations, ordered by harmonic tag.
// Model 1 supports M in {1,2,3}; Model 2 supports M in {1,2}.
std::vector<double> residuals_model1(const AmplitudeSpectrum& spec,
                                     const ModelParams& p, int M);
std::vector<double> residuals_model2(const AmplitudeSpectrum& spec,
                                     const ModelParams& p, int M);

struct GenericOptions {
    bool include_dc = false;       // prepend the harmonic-0 equation (Model 1;
                                   // Model 2's printed set already has it)
    bool include_leakage = false;  // append dropped high-harmonic coefficients
};

struct GenericResiduals {
    std::vector<int> tags;        // harmonic index per equation
    std::vector<double> values;   // residuals, same order as tags
    std::vector<int> leakage_tags;
    std::vector<double> leakage;  // dropped harmonic coefficients (if asked)
};

// Mechanically derived residuals. Builds n, c as cosine series with the
// beta substitution, assembles the stationary operator exactly, and reads
// off harmonic coefficients.
GenericResiduals generic_residuals(const AmplitudeSpectrum& spec,
                                   const ModelParams& p, int M,
                                   const GenericOptions& opts = {});

// All harmonic coefficients 0..deg of the (cleared) stationary residual at
// truncation M. Shared by inverse and forward modes.
std::vector<double> full_harmonic_residuals(const AmplitudeSpectrum& spec,
                                            const ModelParams& p, int M);

class GalerkinError : public ModelError {
public:
    GalerkinError(const std::string& what, std::vector<double> last,
                  double norm)
        : ModelError(what), last_iterate(std::move(last)),
          residual_norm(norm) {}
    std::vector<double> last_iterate;
    double residual_norm = 0.0;
};

struct ForwardResult {
    AmplitudeSpectrum spectrum;   // beta filled from the relations
    double residual_norm = 0.0;   // on harmonics 0..M
    int iterations = 0;
    bool trivial = false;         // converged to a homogeneous branch
};

struct ForwardOptions {
    int max_iterations = 120;
    double tolerance = 1e-12;     // on the max-norm of the harmonic residuals
};

// Forward Galerkin mode: solve the harmonic equations 0..M for the
// amplitudes alpha_0..alpha_M at fixed parameters (the DC equation is part
// of the system here; it pins alpha_0). Damped Newton from `seed`.
ForwardResult forward_galerkin_solve(const ModelParams& p, int M,
                                     const AmplitudeSpectrum& seed,
                                     const ForwardOptions& opts = {});

// Locate a nontrivial branch: ladder the seed amplitude (the homogeneous
// branch has its own Newton basin), solve at M=1 first, and lift that
// solution to the requested truncation. Throws GalerkinError when every
// seed lands on a homogeneous state.
ForwardResult forward_galerkin_branch(const ModelParams& p, int M,
                                      const ForwardOptions& opts = {});

// Minimum of the chemical series c(x) over one period (1024-point scan);
// Model 2's equations are valid only where this stays positive.
double chemical_series_minimum(const AmplitudeSpectrum& spec,
                               const ModelParams& p, int M);

}  // namespace turinv

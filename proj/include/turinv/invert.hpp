// Parameter recovery from an amplitude spectrum: multistart
// Levenberg-Marquardt on the harmonic-balance residuals over
// log-parameters theta = (ln d_n, ln d_c, ln chi0, ln r, ln k).
//
// Identifiability note. The stationary cell equation is jointly homogeneous
// in (d_n, chi0, r), and every equation sees k only through d_n k^2,
// chi0 k^2 and d_c k^2. Amplitude data therefore determines d_c k^2 and the
// ray (d_n k^2 : chi0 k^2 : r) - three numbers - while the remaining two
// directions are exact invariances of the stationary system. They are fixed
// from side information the pipeline actually has:
//   * k_ref: the measured fundamental wavenumber m pi / L (in the data);
//   * r_ref: a kinetic time-scale calibration (one prior coefficient).
// Both pins can be released; the solver then reports every minimum it finds
// along the resulting solution family instead of pretending uniqueness.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "turinv/model.hpp"

namespace turinv {

enum class RecoveryStatus { Converged, Degenerate, Failed };

std::string to_string(RecoveryStatus s);

// Which residual equations the fit runs on.
//   Printed           - the inverse systems as published (Model 1:
//                       harmonics 1..2M-1; Model 2: harmonics 0..2M).
//   GalerkinClosure   - harmonics 0..M of the truncated operator, the set a
//                       forward Galerkin solution satisfies exactly.
enum class EquationSet { Printed, GalerkinClosure };

struct InverseOptions {
    EquationSet equations = EquationSet::Printed;

    // Ingest measured beta amplitudes as additional residual rows
    // (beta_i - alpha_i/(1+i^2 d_c k^2)). Off by default: the bare
    // measurement set is {alpha_i}. The alpha-only fit cannot separate
    // (chi0, d_c) at large d_c (the products chi0 beta_i go flat), so the
    // pipeline switches this on whenever the chemical field was measured.
    bool use_beta = false;

    // gauge pins (see header note); k_ref defaults to the spectrum's
    // wavenumber, r_ref to 1
    bool fix_k = true;
    bool fix_r = true;
    double k_ref = 0.0;  // 0: take from the caller-supplied wavenumber
    double r_ref = 1.0;

    int max_iterations = 200;
    double accept_factor = 1e-8;    // accept when ||R|| < factor*(1+||alpha||)
    double degeneracy_tol = 1e-8;   // |alpha_i| < tol*|alpha_1| flags i
    int lattice_points = 3;         // per free axis, log-spaced 1e-2..1e2
};

struct Minimum {
    ModelParams params;
    double residual_norm = 0.0;
    int iterations = 0;
};

struct RecoveryResult {
    ModelParams params;
    RecoveryStatus status = RecoveryStatus::Failed;
    double residual_norm = 0.0;  // over the harmonic system rows
    int iterations = 0;
    double jacobian_condition = 0.0;
    int starts_tried = 0;
    std::string degeneracy_reason;
    std::vector<Minimum> minima;  // all distinct minima < 10x best residual
    bool k_fixed = false;
    bool r_fixed = false;
    double beta_gap = 0.0;  // measured-beta consistency at the winner
};

struct DegeneracyReport {
    bool ok = true;
    std::string reason;
};

// Screen for spectra that carry no (or collapsed) information: all-zero
// pattern modes, or |alpha_i| below tol*|alpha_1| for an i the system needs.
DegeneracyReport degeneracy_screen(const AmplitudeSpectrum& spec, Model model,
                                   int M, double tol = 1e-8);

// Solve for the parameters from amplitudes. `wavenumber` is the measured
// fundamental (m pi / L) carried with the spectrum; it seeds k and provides
// k_ref when fix_k is on.
RecoveryResult solve_inverse(const AmplitudeSpectrum& spec, Model model,
                             int M, double wavenumber,
                             const InverseOptions& opts = {});

struct IdentifiabilityReport {
    std::vector<double> singular_values;  // of dR/dtheta, all 5 parameters
    double condition = 0.0;
    int rank = 0;          // at threshold 1e-8 * sigma_max
    bool ill_conditioned = false;  // condition > 1e8
};

// Finite-difference Jacobian diagnostics of the printed system at p_hat.
IdentifiabilityReport identifiability_report(const AmplitudeSpectrum& spec,
                                             Model model, int M,
                                             const ModelParams& p_hat);

}  // namespace turinv

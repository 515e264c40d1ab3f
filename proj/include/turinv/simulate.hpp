// Method-of-lines solver for the two chemotaxis systems on [0,L] with
// no-flux boundaries. Cell-centered grid, second-order central diffusion,
// conservative chemotaxis flux with arithmetic-mean face mobilities,
// explicit RK4 in time, run until the rate norm drops below steady_tol.

#pragma once

#include <cstdint>
#include <vector>

#include "turinv/model.hpp"

namespace turinv {

struct Grid1D {
    double L = 1.0;
    int N = 64;

    double dx() const { return L / N; }
    double node(int j) const { return (j + 0.5) * dx(); }  // cell centers
    void validate() const;
};

struct FieldPair {
    std::vector<double> n;
    std::vector<double> c;
    double time = 0.0;
};

class SimulationError : public ModelError {
public:
    explicit SimulationError(const std::string& what) : ModelError(what) {}
};

class SteadyStateTimeout : public SimulationError {
public:
    SteadyStateTimeout(const std::string& what, FieldPair last, double norm)
        : SimulationError(what), last_state(std::move(last)),
          rate_norm(norm) {}
    FieldPair last_state;
    double rate_norm = 0.0;
};

// Semi-discrete rates (dn/dt, dc/dt) for the current fields.
// Model 2 requires c > 0 everywhere.
void rhs(const ModelParams& p, const Grid1D& g, const FieldPair& f,
         std::vector<double>& dn_dt, std::vector<double>& dc_dt);

struct SteadyOptions {
    double steady_tol = 1e-9;  // on max|rate| / max(max|field|, 1)
    double t_max = 1e4;
    double cfl = 0.2;          // dt = cfl * dx^2 / max(d_n, d_c, chi0 * c_max)
    int check_interval = 64;   // steps between steady-state checks
};

struct SteadyResult {
    FieldPair state;
    double rate_norm = 0.0;
    int64_t steps = 0;
};

// Advance to the stationary pattern. Throws SimulationError on blow-up or
// negative density / non-positive chemical, SteadyStateTimeout when t_max
// is reached first.
SteadyResult step_to_steady(const ModelParams& p, const Grid1D& g,
                            const FieldPair& ic,
                            const SteadyOptions& opts = {});

// max_fields max|rate| / max(max|field|, 1) for the current state.
double rate_norm(const ModelParams& p, const Grid1D& g, const FieldPair& f);

// (1,1) plus a cosine perturbation on mode m.
FieldPair perturbed_ic(const Grid1D& g, int mode, double amplitude);

// (1,1) plus seeded multi-mode even noise (cosine modes 1..max_mode with
// random amplitudes), reproducible from the seed.
FieldPair noisy_ic(const Grid1D& g, int max_mode, double amplitude,
                   uint64_t seed);

// Total cell mass: sum n_j dx.
double total_mass(const Grid1D& g, const std::vector<double>& n);

}  // namespace turinv

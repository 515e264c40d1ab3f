#include "turinv/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace turinv {

void Grid1D::validate() const {
    if (N < 64) throw ModelError("grid needs N >= 64");
    if (!(L > 0.0)) throw ModelError("grid needs L > 0");
}

namespace {

void check_fields(const FieldPair& f) {
    for (double v : f.n)
        if (!std::isfinite(v)) throw SimulationError("n blew up (non-finite)");
    for (double v : f.c)
        if (!std::isfinite(v)) throw SimulationError("c blew up (non-finite)");
}

void check_positivity(const FieldPair& f) {
    for (double v : f.n)
        if (v < 0.0)
            throw SimulationError("n became negative; run invalid");
    for (double v : f.c)
        if (v <= 0.0)
            throw SimulationError("c lost positivity; run invalid");
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

void rhs(const ModelParams& p, const Grid1D& g, const FieldPair& f,
         std::vector<double>& dn_dt, std::vector<double>& dc_dt) {
    const int N = g.N;
    const double dx = g.dx();
    const double inv_dx2 = 1.0 / (dx * dx);
    dn_dt.assign(N, 0.0);
    dc_dt.assign(N, 0.0);

    if (p.model == Model::Model2)
        for (double v : f.c)
            if (v <= 0.0)
                throw SimulationError("Model 2 rhs requires c > 0");

    auto at = [N](const std::vector<double>& v, int j) {
        // ghost cells mirror the interior (zero-flux)
        if (j < 0) return v[0];
        if (j >= N) return v[N - 1];
        return v[j];
    };

    for (int j = 0; j < N; ++j) {
        const double lap_n =
            (at(f.n, j - 1) - 2.0 * f.n[j] + at(f.n, j + 1)) * inv_dx2;
        const double lap_c =
            (at(f.c, j - 1) - 2.0 * f.c[j] + at(f.c, j + 1)) * inv_dx2;

        // chemotactic flux chi0 * mob * dc/dx at the two faces; zero at walls
        double flux_right = 0.0, flux_left = 0.0;
        if (j + 1 < N) {
            const double mob =
                p.model == Model::Model1
                    ? 0.5 * (f.n[j] + f.n[j + 1])
                    : 0.5 * (f.n[j] / f.c[j] + f.n[j + 1] / f.c[j + 1]);
            flux_right = mob * (f.c[j + 1] - f.c[j]) / dx;
        }
        if (j - 1 >= 0) {
            const double mob =
                p.model == Model::Model1
                    ? 0.5 * (f.n[j - 1] + f.n[j])
                    : 0.5 * (f.n[j - 1] / f.c[j - 1] + f.n[j] / f.c[j]);
            flux_left = mob * (f.c[j] - f.c[j - 1]) / dx;
        }

        dn_dt[j] = p.d_n * lap_n - p.chi0 * (flux_right - flux_left) / dx +
                   p.r * f.n[j] * (1.0 - f.n[j]);
        dc_dt[j] = p.d_c * lap_c + f.n[j] - f.c[j];
    }
}

double rate_norm(const ModelParams& p, const Grid1D& g, const FieldPair& f) {
    std::vector<double> dn, dc;
    rhs(p, g, f, dn, dc);
    const double n_scale = std::max(max_abs(f.n), 1.0);
    const double c_scale = std::max(max_abs(f.c), 1.0);
    return std::max(max_abs(dn) / n_scale, max_abs(dc) / c_scale);
}

SteadyResult step_to_steady(const ModelParams& p, const Grid1D& g,
                            const FieldPair& ic, const SteadyOptions& opts) {
    p.validate();
    g.validate();
    const int N = g.N;
    if (static_cast<int>(ic.n.size()) != N ||
        static_cast<int>(ic.c.size()) != N)
        throw SimulationError("initial condition size does not match grid");

    FieldPair f = ic;
    check_fields(f);
    check_positivity(f);

    std::vector<double> k1n(N), k1c(N), k2n(N), k2c(N), k3n(N), k3c(N),
        k4n(N), k4c(N);
    FieldPair stage;
    stage.n.resize(N);
    stage.c.resize(N);

    auto dt_bound = [&]() {
        const double c_max = std::max(max_abs(f.c), 1e-12);
        const double d_max =
            std::max({p.d_n, p.d_c, p.chi0 * c_max});
        return opts.cfl * g.dx() * g.dx() / d_max;
    };

    int64_t steps = 0;
    double dt = dt_bound();
    while (f.time < opts.t_max) {
        // classical RK4
        rhs(p, g, f, k1n, k1c);
        for (int j = 0; j < N; ++j) {
            stage.n[j] = f.n[j] + 0.5 * dt * k1n[j];
            stage.c[j] = f.c[j] + 0.5 * dt * k1c[j];
        }
        rhs(p, g, stage, k2n, k2c);
        for (int j = 0; j < N; ++j) {
            stage.n[j] = f.n[j] + 0.5 * dt * k2n[j];
            stage.c[j] = f.c[j] + 0.5 * dt * k2c[j];
        }
        rhs(p, g, stage, k3n, k3c);
        for (int j = 0; j < N; ++j) {
            stage.n[j] = f.n[j] + dt * k3n[j];
            stage.c[j] = f.c[j] + dt * k3c[j];
        }
        rhs(p, g, stage, k4n, k4c);
        for (int j = 0; j < N; ++j) {
            f.n[j] += dt / 6.0 * (k1n[j] + 2.0 * k2n[j] + 2.0 * k3n[j] + k4n[j]);
            f.c[j] += dt / 6.0 * (k1c[j] + 2.0 * k2c[j] + 2.0 * k3c[j] + k4c[j]);
        }
        f.time += dt;
        ++steps;

        if (steps % opts.check_interval == 0) {
            check_fields(f);
            check_positivity(f);
            const double norm = rate_norm(p, g, f);
            if (norm < opts.steady_tol) {
                SteadyResult out;
                out.state = std::move(f);
                out.rate_norm = norm;
                out.steps = steps;
                return out;
            }
            dt = dt_bound();
        }
    }
    throw SteadyStateTimeout("t_max reached before the pattern settled",
                             std::move(f), rate_norm(p, g, f));
}

FieldPair perturbed_ic(const Grid1D& g, int mode, double amplitude) {
    FieldPair f;
    f.n.resize(g.N);
    f.c.resize(g.N);
    for (int j = 0; j < g.N; ++j) {
        const double bump = amplitude * std::cos(mode * M_PI * g.node(j) / g.L);
        f.n[j] = 1.0 + bump;
        f.c[j] = 1.0 + bump;
    }
    return f;
}

FieldPair noisy_ic(const Grid1D& g, int max_mode, double amplitude,
                   uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> amps(max_mode + 1, 0.0);
    for (int m = 1; m <= max_mode; ++m) amps[m] = amplitude * U(rng);
    FieldPair f;
    f.n.resize(g.N);
    f.c.resize(g.N);
    for (int j = 0; j < g.N; ++j) {
        double bump = 0.0;
        for (int m = 1; m <= max_mode; ++m)
            bump += amps[m] * std::cos(m * M_PI * g.node(j) / g.L);
        f.n[j] = 1.0 + bump;
        f.c[j] = 1.0 + bump;
    }
    return f;
}

double total_mass(const Grid1D& g, const std::vector<double>& n) {
    double acc = 0.0;
    for (double v : n) acc += v;
    return acc * g.dx();
}

}  // namespace turinv

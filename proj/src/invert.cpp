#include "turinv/invert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "turinv/linalg.hpp"
#include "turinv/residuals.hpp"

namespace turinv {

std::string to_string(RecoveryStatus s) {
    switch (s) {
        case RecoveryStatus::Converged: return "Converged";
        case RecoveryStatus::Degenerate: return "Degenerate";
        default: return "Failed";
    }
}

namespace {

constexpr int kNumParams = 5;  // (d_n, d_c, chi0, r, k)

ModelParams params_from_theta(Model model, const std::vector<double>& theta) {
    ModelParams p;
    p.model = model;
    p.d_n = std::exp(theta[0]);
    p.d_c = std::exp(theta[1]);
    p.chi0 = std::exp(theta[2]);
    p.r = std::exp(theta[3]);
    p.k = std::exp(theta[4]);
    return p;
}

// Residual map used by the fit. Returns false when the parameter point is
// outside the model's validity region (Model 2 denominator). With
// use_beta, the measured chemical amplitudes add one row per harmonic.
bool eval_residuals(const AmplitudeSpectrum& spec, Model model, int M,
                    EquationSet set, bool use_beta, const ModelParams& p,
                    std::vector<double>& out) {
    try {
        if (set == EquationSet::Printed) {
            out = model == Model::Model1 ? residuals_model1(spec, p, M)
                                         : residuals_model2(spec, p, M);
        } else {
            const std::vector<double> full =
                full_harmonic_residuals(spec, p, M);
            out.assign(full.begin(), full.begin() + (M + 1));
        }
        if (use_beta && spec.has_beta()) {
            for (int i = 1; i <= spec.order(); ++i)
                out.push_back(spec.b(i) -
                              beta_relation(spec.a(i), i, p.d_c, p.k));
        }
    } catch (const ModelError&) {
        return false;
    }
    return true;
}

double two_norm(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

struct LmOutcome {
    std::vector<double> theta;
    double residual_norm = std::numeric_limits<double>::infinity();
    double grad_rel = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool valid = false;  // reached a finite evaluation at all
};

// Levenberg-Marquardt over the free components of theta, run to a
// stationary point (no early accept; classification happens outside).
LmOutcome levenberg_marquardt(const AmplitudeSpectrum& spec, Model model,
                              int M, EquationSet set, bool use_beta,
                              std::vector<double> theta,
                              const std::vector<int>& free_idx,
                              int max_iterations) {
    LmOutcome out;
    const int nfree = static_cast<int>(free_idx.size());

    std::vector<double> res;
    if (!eval_residuals(spec, model, M, set, use_beta,
                        params_from_theta(model, theta), res))
        return out;
    double norm = two_norm(res);
    out.valid = true;

    const int m = static_cast<int>(res.size());
    Matrix jac(m, nfree);
    double lambda = 1e-3;
    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        // forward-difference Jacobian, 1e-6 relative step per component
        bool jac_ok = true;
        for (int j = 0; j < nfree; ++j) {
            const int slot = free_idx[j];
            const double h = 1e-6 * (1.0 + std::abs(theta[slot]));
            std::vector<double> shifted = theta;
            shifted[slot] += h;
            std::vector<double> res_h;
            if (!eval_residuals(spec, model, M, set, use_beta,
                                params_from_theta(model, shifted), res_h)) {
                jac_ok = false;
                break;
            }
            for (int i = 0; i < m; ++i)
                jac.at(i, j) = (res_h[i] - res[i]) / h;
        }
        if (!jac_ok) break;

        Matrix jtj(nfree, nfree);
        std::vector<double> jtr(nfree, 0.0);
        for (int i = 0; i < nfree; ++i) {
            for (int j = 0; j < nfree; ++j) {
                double acc = 0.0;
                for (int row = 0; row < m; ++row)
                    acc += jac.at(row, i) * jac.at(row, j);
                jtj.at(i, j) = acc;
            }
            for (int row = 0; row < m; ++row)
                jtr[i] += jac.at(row, i) * res[row];
        }

        // scaled gradient test (angle between R and the column space)
        double grad_rel = 0.0;
        for (int j = 0; j < nfree; ++j) {
            const double colnorm = std::sqrt(std::max(jtj.at(j, j), 1e-300));
            grad_rel = std::max(grad_rel, std::abs(jtr[j]) /
                                              (colnorm * norm + 1e-300));
        }
        out.grad_rel = grad_rel;
        if (norm < 1e-15 || grad_rel < 1e-10) break;

        bool stepped = false;
        for (int attempt = 0; attempt < 40; ++attempt) {
            Matrix damped = jtj;
            for (int i = 0; i < nfree; ++i)
                damped.at(i, i) += lambda * (1.0 + jtj.at(i, i));
            std::vector<double> rhs(jtr), delta;
            for (double& v : rhs) v = -v;
            if (!solve_linear(damped, rhs, delta)) {
                lambda *= 10.0;
                continue;
            }
            std::vector<double> trial = theta;
            double step_size = 0.0;
            for (int j = 0; j < nfree; ++j) {
                trial[free_idx[j]] += delta[j];
                step_size = std::max(step_size, std::abs(delta[j]));
            }
            if (step_size < 1e-14) break;
            std::vector<double> res_t;
            if (eval_residuals(spec, model, M, set, use_beta,
                               params_from_theta(model, trial), res_t) &&
                two_norm(res_t) < norm) {
                theta = std::move(trial);
                res = std::move(res_t);
                norm = two_norm(res);
                lambda = std::max(lambda / 3.0, 1e-14);
                stepped = true;
                break;
            }
            lambda *= 4.0;
            if (lambda > 1e15) break;
        }
        if (!stepped) break;  // stationary to step precision
    }

    out.theta = std::move(theta);
    out.residual_norm = norm;
    out.iterations = iter;
    return out;
}

// Consistency gap between measured chemical amplitudes and the relations
// they must obey under candidate parameters; used to select among multiple
// stationary points when beta data is available.
double beta_gap(const AmplitudeSpectrum& spec, const ModelParams& p) {
    if (!spec.has_beta()) return 0.0;
    double amax = 1e-300;
    for (double v : spec.alpha) amax = std::max(amax, std::abs(v));
    double worst = 0.0;
    for (int i = 1; i <= spec.order(); ++i) {
        const double want = beta_relation(spec.a(i), i, p.d_c, p.k);
        worst = std::max(worst, std::abs(spec.b(i) - want));
    }
    return worst / amax;
}

// Residual norm over the harmonic system rows alone (reported norms stay
// comparable with residuals_model1/2 whether or not beta rows were fit).
double system_norm(const AmplitudeSpectrum& spec, Model model, int M,
                   EquationSet set, const ModelParams& p) {
    std::vector<double> res;
    if (!eval_residuals(spec, model, M, set, false, p, res))
        return std::numeric_limits<double>::infinity();
    return two_norm(res);
}

Matrix printed_jacobian(const AmplitudeSpectrum& spec, Model model, int M,
                        const std::vector<double>& theta, bool& ok) {
    // central differences: the identifiability diagnostics need the tiny
    // singular values to be meaningful
    std::vector<double> probe;
    ok = eval_residuals(spec, model, M, EquationSet::Printed, false,
                        params_from_theta(model, theta), probe);
    Matrix jac(static_cast<int>(probe.size()), kNumParams);
    if (!ok) return jac;
    for (int j = 0; j < kNumParams; ++j) {
        const double h = 1e-6 * (1.0 + std::abs(theta[j]));
        std::vector<double> plus = theta, minus = theta;
        plus[j] += h;
        minus[j] -= h;
        std::vector<double> res_p, res_m;
        if (!eval_residuals(spec, model, M, EquationSet::Printed, false,
                            params_from_theta(model, plus), res_p) ||
            !eval_residuals(spec, model, M, EquationSet::Printed, false,
                            params_from_theta(model, minus), res_m)) {
            ok = false;
            return jac;
        }
        for (int i = 0; i < jac.rows; ++i)
            jac.at(i, j) = (res_p[i] - res_m[i]) / (2.0 * h);
    }
    return jac;
}

}  // namespace

DegeneracyReport degeneracy_screen(const AmplitudeSpectrum& spec, Model model,
                                   int M, double tol) {
    DegeneracyReport rep;
    double pattern = 0.0;
    for (int i = 1; i <= spec.order(); ++i)
        pattern = std::max(pattern, std::abs(spec.a(i)));
    if (pattern == 0.0 ||
        pattern < tol * std::max(std::abs(spec.a(0)), 1e-300)) {
        rep.ok = false;
        rep.reason = "homogeneous";
        return rep;
    }
    if (std::abs(spec.a(0)) < 1e-2) {
        // patterns of these models oscillate around a positive mean; a
        // near-zero mean is the extinct state, not usable data
        rep.ok = false;
        rep.reason = "collapsed mean density";
        return rep;
    }
    const double a1 = std::abs(spec.a(1));
    if (a1 == 0.0) {
        rep.ok = false;
        rep.reason = "alpha_1 vanishes";
        return rep;
    }
    for (int i = 2; i <= M; ++i) {
        if (std::abs(spec.a(i)) < tol * a1) {
            rep.ok = false;
            rep.reason = "alpha_" + std::to_string(i) + " below threshold";
            if (model == Model::Model1 && M == 3 && i == 2)
                rep.reason += "; equations with tag 4,5 vanish";
            return rep;
        }
    }
    return rep;
}

RecoveryResult solve_inverse(const AmplitudeSpectrum& spec, Model model,
                             int M, double wavenumber,
                             const InverseOptions& opts) {
    RecoveryResult result;
    result.k_fixed = opts.fix_k;
    result.r_fixed = opts.fix_r;

    const DegeneracyReport screen =
        degeneracy_screen(spec, model, M, opts.degeneracy_tol);
    if (!screen.ok) {
        result.status = RecoveryStatus::Degenerate;
        result.degeneracy_reason = screen.reason;
        return result;
    }

    const double k_ref =
        opts.k_ref > 0.0 ? opts.k_ref : (wavenumber > 0.0 ? wavenumber : 1.0);
    const double spec_scale = 1.0 + two_norm(spec.alpha);
    const double accept_norm = opts.accept_factor * spec_scale;

    // free/pinned split of theta = (ln d_n, ln d_c, ln chi0, ln r, ln k)
    std::vector<int> free_idx = {0, 1, 2};
    if (!opts.fix_r) free_idx.push_back(3);
    if (!opts.fix_k) free_idx.push_back(4);
    std::sort(free_idx.begin(), free_idx.end());

    std::vector<double> base_theta(kNumParams, 0.0);
    base_theta[3] = std::log(opts.r_ref);
    base_theta[4] = std::log(k_ref);

    // log-uniform start lattice spanning 1e-2..1e2 per free axis (k axis
    // stays near the measured fundamental)
    std::vector<std::vector<double>> axis_values(kNumParams);
    const int npts = std::max(opts.lattice_points, 1);
    for (int slot : free_idx) {
        for (int i = 0; i < npts; ++i) {
            const double t =
                npts == 1 ? 0.0 : (2.0 * i / (npts - 1) - 1.0);  // -1..1
            if (slot == 4)
                axis_values[slot].push_back(std::log(k_ref) +
                                            t * std::log(2.0));
            else
                axis_values[slot].push_back(t * std::log(100.0));
        }
    }

    // a stationary point counts as converged when it matches the data to
    // the exact-consistency acceptance, or when it is a genuine first-order
    // minimum of sane magnitude (inexact data: the truncation floor)
    auto is_converged = [&](const LmOutcome& run) {
        if (!run.valid) return false;
        if (run.residual_norm < accept_norm) return true;
        return run.grad_rel < 1e-6 && run.residual_norm < 0.5 * spec_scale;
    };

    std::vector<LmOutcome> stationary;
    LmOutcome best_failed;
    int starts = 0;
    std::vector<int> counter(free_idx.size(), 0);
    while (true) {
        std::vector<double> theta = base_theta;
        for (size_t j = 0; j < free_idx.size(); ++j)
            theta[free_idx[j]] = axis_values[free_idx[j]][counter[j]];
        ++starts;

        LmOutcome run =
            levenberg_marquardt(spec, model, M, opts.equations,
                                opts.use_beta, std::move(theta), free_idx,
                                opts.max_iterations);
        if (is_converged(run))
            stationary.push_back(std::move(run));
        else if (run.valid && run.residual_norm < best_failed.residual_norm)
            best_failed = std::move(run);

        size_t pos = 0;  // odometer over the lattice
        for (; pos < counter.size(); ++pos) {
            if (++counter[pos] < npts) break;
            counter[pos] = 0;
        }
        if (pos == counter.size()) break;
    }
    result.starts_tried = starts;

    if (stationary.empty()) {
        result.status = RecoveryStatus::Failed;
        if (!best_failed.theta.empty()) {
            result.params = params_from_theta(model, best_failed.theta);
            result.residual_norm = system_norm(spec, model, M, opts.equations,
                                               result.params);
            result.iterations = best_failed.iterations;
        }
        return result;
    }

    // selection: when measured beta is available it arbitrates between
    // distinct stationary points (they imply different d_c k^2); then the
    // lowest residual wins, ties broken lexicographically in theta
    double best_gap = std::numeric_limits<double>::infinity();
    std::vector<double> gaps(stationary.size());
    for (size_t i = 0; i < stationary.size(); ++i) {
        gaps[i] = beta_gap(spec, params_from_theta(model,
                                                   stationary[i].theta));
        best_gap = std::min(best_gap, gaps[i]);
    }
    const double gap_cut = spec.has_beta()
                               ? std::max(3.0 * best_gap, best_gap + 1e-12)
                               : std::numeric_limits<double>::infinity();

    std::vector<size_t> order(stationary.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const bool in_a = gaps[a] <= gap_cut, in_b = gaps[b] <= gap_cut;
        if (in_a != in_b) return in_a;
        if (stationary[a].residual_norm != stationary[b].residual_norm)
            return stationary[a].residual_norm < stationary[b].residual_norm;
        return stationary[a].theta < stationary[b].theta;
    });
    const LmOutcome& best = stationary[order.front()];

    result.status = RecoveryStatus::Converged;
    result.params = params_from_theta(model, best.theta);
    result.residual_norm =
        system_norm(spec, model, M, opts.equations, result.params);
    result.iterations = best.iterations;
    result.beta_gap = gaps[order.front()];

    // distinct minima below 10x the best residual, to surface any
    // non-uniqueness empirically
    for (size_t idx : order) {
        const LmOutcome& m = stationary[idx];
        if (m.residual_norm >
            10.0 * std::max(best.residual_norm, accept_norm))
            continue;
        const ModelParams q = params_from_theta(model, m.theta);
        bool duplicate = false;
        for (const Minimum& seen : result.minima) {
            const double dist =
                std::max({std::abs(std::log(q.d_n / seen.params.d_n)),
                          std::abs(std::log(q.d_c / seen.params.d_c)),
                          std::abs(std::log(q.chi0 / seen.params.chi0)),
                          std::abs(std::log(q.r / seen.params.r)),
                          std::abs(std::log(q.k / seen.params.k))});
            if (dist < 1e-5) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate)
            result.minima.push_back(
                {q, system_norm(spec, model, M, opts.equations, q),
                 m.iterations});
    }

    result.jacobian_condition =
        identifiability_report(spec, model, M, result.params).condition;
    return result;
}

IdentifiabilityReport identifiability_report(const AmplitudeSpectrum& spec,
                                             Model model, int M,
                                             const ModelParams& p_hat) {
    IdentifiabilityReport rep;
    const std::vector<double> theta = {std::log(p_hat.d_n),
                                       std::log(p_hat.d_c),
                                       std::log(p_hat.chi0),
                                       std::log(p_hat.r), std::log(p_hat.k)};
    bool ok = false;
    const Matrix jac = printed_jacobian(spec, model, M, theta, ok);
    if (!ok) return rep;

    rep.singular_values = singular_values(jac);
    const double smax = rep.singular_values.front();
    const double smin = rep.singular_values.back();
    rep.condition = smax / std::max(smin, 1e-300);
    rep.rank = 0;
    for (double s : rep.singular_values)
        if (s > 1e-8 * std::max(smax, 1e-300)) ++rep.rank;
    rep.ill_conditioned = rep.condition > 1e8;
    return rep;
}

}  // namespace turinv

#include "turinv/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "turinv/linalg.hpp"
#include "turinv/series.hpp"

namespace turinv {

namespace {

void check_truncation(Model model, int M) {
    if (model == Model::Model1 && (M < 1 || M > 3))
        throw ModelError("Model 1 systems are implemented for M in {1,2,3}");
    if (model == Model::Model2 && (M < 1 || M > 2))
        throw ModelError("Model 2 systems are implemented for M in {1,2}");
}

// Substituted chemical amplitudes: beta_0 = alpha_0, beta_i from the
// relation. Measured beta, if present, is deliberately ignored here.
std::vector<double> substituted_beta(const AmplitudeSpectrum& spec,
                                     const ModelParams& p, int M) {
    std::vector<double> beta(M + 1, 0.0);
    beta[0] = spec.a(0);
    for (int i = 1; i <= M; ++i)
        beta[i] = beta_relation(spec.a(i), i, p.d_c, p.k);
    return beta;
}

CosineSeries density_series(const AmplitudeSpectrum& spec, double k, int M) {
    std::vector<double> c(M + 1, 0.0);
    for (int i = 0; i <= M; ++i) c[i] = spec.a(i);
    return CosineSeries(std::move(c), k);
}

SineSeries negate(SineSeries f) {
    for (double& v : f.s) v = -v;
    return f;
}

}  // namespace

double beta_relation(double alpha_i, int i, double d_c, double k) {
    if (i < 1)
        throw ModelError("beta_relation requires i >= 1 (beta_0 = alpha_0 is "
                         "a separate identity)");
    if (!(d_c > 0.0) || !(k > 0.0))
        throw ModelError("beta_relation requires d_c > 0 and k > 0");
    return alpha_i / (1.0 + static_cast<double>(i) * i * d_c * k * k);
}

std::vector<int> system_tags(Model model, int M) {
    check_truncation(model, M);
    std::vector<int> tags;
    if (model == Model::Model1) {
        // harmonics 1 .. 2M-1 (the DC line is blank in the printed systems)
        for (int i = 1; i <= 2 * M - 1; ++i) tags.push_back(i);
    } else {
        // harmonics 0 .. 3 (M=1) or 0 .. 4 (M=2)
        const int top = (M == 1) ? 3 : 4;
        for (int i = 0; i <= top; ++i) tags.push_back(i);
    }
    return tags;
}

std::vector<double> residuals_model1(const AmplitudeSpectrum& spec,
                                     const ModelParams& p, int M) {
    check_truncation(Model::Model1, M);
    p.validate();
    if (spec.order() < M)
        throw ModelError("spectrum order is below the requested truncation");

    const double k2 = p.k * p.k;
    const double dn = p.d_n, chi = p.chi0, r = p.r;
    const double a0 = spec.a(0), a1 = spec.a(1), a2 = spec.a(2),
                 a3 = spec.a(3);
    const std::vector<double> bb = substituted_beta(spec, p, M);
    const double b1 = bb[1];
    const double b2 = M >= 2 ? bb[2] : 0.0;
    const double b3 = M >= 3 ? bb[3] : 0.0;

    std::vector<double> res;
    if (M == 1) {
        res.push_back(-dn * k2 * a1 + chi * k2 * a0 * b1 +
                      r * (a1 - 2 * a0 * a1));
    } else if (M == 2) {
        res.push_back(-dn * k2 * a1 +
                      chi * k2 * (a0 * b1 + a1 * b2 - 0.5 * a2 * b1) +
                      r * (a1 - 2 * a0 * a1 - a1 * a2));
        res.push_back(-4 * dn * k2 * a2 + chi * k2 * (4 * a0 * b2 + a1 * b1) +
                      r * (a2 - 2 * a0 * a2 - 0.5 * a1 * a1));
        res.push_back(chi * k2 * (3 * a1 * b2 + 1.5 * a2 * b1) -
                      r * a1 * a2);
    } else {
        res.push_back(-dn * k2 * a1 +
                      chi * k2 * (a0 * b1 + a1 * b2 - 0.5 * a2 * b1 +
                                  1.5 * a2 * b3 - a3 * b2) +
                      r * (a1 - 2 * a0 * a1 - a1 * a2 - a2 * a3));
        res.push_back(-4 * dn * k2 * a2 +
                      chi * k2 * (4 * a0 * b2 + a1 * b1 + 3 * a1 * b3 -
                                  a3 * b1) +
                      r * (a2 - 2 * a0 * a2 - 0.5 * a1 * a1 - a1 * a3));
        res.push_back(-9 * dn * k2 * a3 +
                      chi * k2 * (9 * a0 * b3 + 3 * a1 * b2 + 1.5 * a2 * b1) +
                      r * (a3 - 2 * a0 * a3 - a1 * a2));
        res.push_back(chi * k2 * (6 * a1 * b3 + 4 * a2 * b2 + 2 * a3 * b1) -
                      r * (a1 * a3 + 0.5 * a2 * a2));
        // The r-term sign follows the expanded (J_3)/(L_3) coefficients; the
        // compact printed system carries a sign slip here.
        res.push_back(chi * k2 * (7.5 * a2 * b3 + 5 * a3 * b2) -
                      r * a2 * a3);
    }
    return res;
}

std::vector<double> residuals_model2(const AmplitudeSpectrum& spec,
                                     const ModelParams& p, int M) {
    check_truncation(Model::Model2, M);
    p.validate();
    if (spec.order() < M)
        throw ModelError("spectrum order is below the requested truncation");

    const double cmin = chemical_series_minimum(spec, p, M);
    const double a0 = spec.a(0), a1 = spec.a(1), a2 = spec.a(2);
    const std::vector<double> bb = substituted_beta(spec, p, M);
    const double b1 = bb[1];
    const double b2 = M >= 2 ? bb[2] : 0.0;
    {
        double cmax = std::abs(a0) + std::abs(b1) + std::abs(b2);
        if (!(cmin > 1e-6 * cmax))
            throw ModelError(
                "chemical series is not positive over the period; the "
                "pattern leaves the model's validity region");
    }

    const double k2 = p.k * p.k;
    const double dn = p.d_n, chi = p.chi0, r = p.r;

    std::vector<double> res;
    if (M == 1) {
        res.push_back(
            -dn * k2 * a0 * a1 * b1 + chi * k2 * a0 * b1 * b1 +
            r * (a0 * a0 * a0 - a0 * a0 * a0 * a0 -
                 0.5 * a0 * a0 * a1 * a1 + 0.5 * a0 * b1 * b1 -
                 0.5 * a0 * a0 * b1 * b1 - 0.375 * a1 * a1 * b1 * b1 +
                 a0 * a1 * b1 - 2 * a0 * a0 * a1 * b1));
        res.push_back(
            -dn * k2 * a1 * (a0 * a0 + 0.75 * b1 * b1) +
            chi * k2 * (a0 * a0 * b1 + 0.75 * a1 * b1 * b1) +
            r * (a0 * a0 * a1 - 2 * a0 * a0 * a0 * a1 +
                 0.75 * a1 * b1 * b1 - 1.5 * a0 * a1 * b1 * b1 +
                 2 * a0 * a0 * b1 - 2 * a0 * a0 * a0 * b1 -
                 1.5 * a0 * a1 * a1 * b1));
        res.push_back(
            -dn * k2 * a0 * a1 * b1 + chi * k2 * a0 * a1 * b1 +
            r * (a0 * a1 * b1 - 2 * a0 * a0 * a1 * b1 -
                 0.5 * a0 * a0 * a1 * a1 - 0.5 * a1 * a1 * b1 * b1 +
                 0.5 * a0 * b1 * b1 - 0.5 * a0 * a0 * b1 * b1));
        res.push_back(
            -0.25 * dn * k2 * a1 * b1 * b1 + 0.25 * chi * k2 * a1 * b1 * b1 +
            r * (-0.5 * a0 * a1 * a1 * b1 + 0.25 * a1 * b1 * b1 -
                 0.5 * a0 * a1 * b1 * b1));
        return res;
    }

    // M = 2, harmonics 0..4 of the c^2-cleared equation
    res.push_back(
        -dn * k2 * (a0 * a1 * b1 + 4 * a0 * a2 * b2 + 0.5 * a1 * b1 * b2 +
                    a2 * b1 * b1) +
        chi * k2 * (a0 * b1 * b1 + 4 * a0 * b2 * b2 + 2 * a1 * b1 * b2 -
                    0.5 * a2 * b1 * b1) -
        r * (a0 * a0 * a0 * a0 - a0 * a0 * a0 + 0.5 * a0 * a0 * a1 * a1 +
             0.5 * a0 * a0 * a2 * a2 + 0.5 * a0 * a0 * b2 * b2 +
             2 * a0 * a0 * a2 * b2 + 0.5 * a0 * a0 * b1 * b1 +
             2 * a0 * a0 * a1 * b1 - 0.5 * a0 * b2 * b2 +
             0.5 * a0 * a1 * a1 * b2 - a0 * a2 * b2 + a0 * a1 * b1 * b2 +
             0.5 * a0 * a2 * b1 * b1 - 0.5 * a0 * b1 * b1 - a0 * a1 * b1 +
             a0 * a1 * a2 * b1 + 0.25 * a1 * a1 * b2 * b2 +
             0.375 * a2 * a2 * b2 * b2 - 0.5 * a1 * b1 * b2 +
             a1 * a2 * b1 * b2 + 0.375 * a1 * a1 * b1 * b1 +
             0.25 * a2 * a2 * b1 * b1 - 0.25 * a2 * b1 * b1));
    res.push_back(
        -dn * k2 * (a0 * a0 * a1 + a0 * a1 * b2 + 4 * a0 * a2 * b1 +
                    0.5 * a1 * b2 * b2 + 0.75 * a1 * b1 * b1 +
                    4 * a2 * b1 * b2) +
        chi * k2 * (a0 * a0 * b1 + 4.5 * a0 * b1 * b2 + a0 * a1 * b2 -
                    0.5 * a0 * a2 * b1 + 0.75 * a1 * b1 * b1 +
                    4 * a1 * b2 * b2 + 0.5 * a2 * b1 * b2) -
        r * (2 * a0 * a0 * a0 * a1 + 2 * a0 * a0 * a0 * b1 - a0 * a0 * a1 +
             a0 * a0 * a1 * a2 + 2 * a0 * a0 * a1 * b2 + a0 * a0 * b1 * b2 +
             2 * a0 * a0 * a2 * b1 - 2 * a0 * a0 * b1 + a0 * a1 * b2 * b2 -
             a0 * a1 * b2 + 2 * a0 * a1 * a2 * b2 + 2 * a0 * a2 * b1 * b2 -
             a0 * b1 * b2 + 1.5 * a0 * a1 * b1 * b1 + 1.5 * a0 * a1 * a1 * b1 +
             a0 * a2 * a2 * b1 - a0 * a2 * b1 - 0.5 * a1 * b2 * b2 +
             0.75 * a1 * a2 * b2 * b2 + a1 * a1 * b1 * b2 +
             0.75 * a2 * a2 * b1 * b2 - a2 * b1 * b2 - 0.75 * a1 * b1 * b1 +
             a1 * a2 * b1 * b1));
    res.push_back(
        -dn * k2 * (4 * a0 * a0 * a2 + a0 * a1 * b1 + a1 * b1 * b2 +
                    3 * a2 * b2 * b2 + 2 * a2 * b1 * b1) +
        chi * k2 * (a0 * a1 * b1 + 4 * a0 * a0 * b2 + 2 * a1 * b1 * b2 +
                    a2 * b1 * b1 + 3 * a2 * b2 * b2) -
        r * (2 * a0 * a0 * a0 * a2 + 2 * a0 * a0 * a0 * b2 +
             0.5 * a0 * a0 * a1 * a1 - a0 * a0 * a2 - 2 * a0 * a0 * b2 +
             0.5 * a0 * a0 * b1 * b1 + 2 * a0 * a0 * a1 * b1 +
             1.5 * a0 * a2 * b2 * b2 + a0 * a1 * a1 * b2 +
             1.5 * a0 * a2 * a2 * b2 + 2 * a0 * a1 * b1 * b2 +
             a0 * a2 * b1 * b1 - 0.5 * a0 * b1 * b1 - a0 * a1 * b1 +
             2 * a0 * a1 * a2 * b1 + 0.375 * a1 * a1 * b2 * b2 -
             0.75 * a2 * b2 * b2 - a1 * b1 * b2 + 1.5 * a1 * a2 * b1 * b2 +
             0.5 * a1 * a1 * b1 * b1 + 0.375 * a2 * a2 * b1 * b1 -
             0.5 * a2 * b1 * b1));
    res.push_back(
        -dn * k2 * (a0 * a1 * b2 + 4 * a0 * a2 * b1 + 0.25 * a1 * b1 * b1 +
                    0.25 * a1 * b2 * b2 + 2 * a2 * b1 * b2) +
        chi * k2 * (0.5 * a0 * b1 * b2 + 3 * a0 * a1 * b2 +
                    1.5 * a0 * a2 * b1 + 0.25 * a1 * b1 * b1 -
                    0.5 * a1 * b2 * b2 + 2.75 * a2 * b1 * b2) -
        r * (a0 * a0 * a1 * a2 + 2 * a0 * a0 * a1 * b2 + a0 * a0 * b1 * b2 +
             2 * a0 * a0 * a2 * b1 + 0.5 * a0 * a1 * b2 * b2 - a0 * a1 * b2 +
             a0 * a1 * a2 * b2 + a0 * a2 * b1 * b2 - a0 * b1 * b2 +
             0.5 * a0 * a1 * b1 * b1 + 0.5 * a0 * a1 * a1 * b1 +
             0.5 * a0 * a2 * a2 * b1 - a0 * a2 * b1 - 0.25 * a1 * b2 * b2 +
             0.75 * a1 * a2 * b2 * b2 + 0.75 * a1 * a1 * b1 * b2 +
             0.75 * a2 * a2 * b1 * b2 - 0.5 * a2 * b1 * b2 -
             0.25 * a1 * b1 * b1 + 0.75 * a1 * a2 * b1 * b1));
    res.push_back(
        -dn * k2 * (4 * a0 * a2 * b2 + 0.5 * a1 * b1 * b2 + a2 * b1 * b1) +
        chi * k2 * (4 * a0 * a2 * b2 + a1 * b1 * b2 + 0.5 * a2 * b1 * b1) -
        r * (0.5 * a0 * a0 * a2 * a2 + 0.5 * a0 * a0 * b2 * b2 +
             2 * a0 * a0 * a2 * b2 - 0.5 * a0 * b2 * b2 +
             0.5 * a0 * a1 * a1 * b2 - a0 * a2 * b2 + a0 * a1 * b1 * b2 +
             0.5 * a0 * a2 * b1 * b1 + a0 * a1 * a2 * b1 +
             0.25 * a1 * a1 * b2 * b2 + 0.5 * a2 * a2 * b2 * b2 -
             0.5 * a1 * b1 * b2 + a1 * a2 * b1 * b2 +
             0.125 * a1 * a1 * b1 * b1 + 0.25 * a2 * a2 * b1 * b1 -
             0.25 * a2 * b1 * b1));
    return res;
}

double chemical_series_minimum(const AmplitudeSpectrum& spec,
                               const ModelParams& p, int M) {
    const std::vector<double> beta = substituted_beta(spec, p, M);
    CosineSeries c(beta, p.k);
    const double period = 2.0 * M_PI / p.k;
    double cmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 1024; ++j)
        cmin = std::min(cmin, c.evaluate(period * j / 1024.0));
    return cmin;
}

std::vector<double> full_harmonic_residuals(const AmplitudeSpectrum& spec,
                                            const ModelParams& p, int M) {
    p.validate();
    if (M < 1) throw ModelError("truncation order must be >= 1");
    const CosineSeries n = density_series(spec, p.k, M);
    const CosineSeries c(substituted_beta(spec, p, M), p.k);

    // logistic term r n (1 - n)
    const CosineSeries logistic =
        scale(add(n, scale(multiply_cc(n, n), -1.0)), p.r);
    const CosineSeries n_xx = differentiate(differentiate(n));

    if (p.model == Model::Model1) {
        // d_n n'' + chi0 d/dx (n S) + r n(1-n), with S = -c'
        const SineSeries s = negate(differentiate(c));
        const CosineSeries flux = differentiate(multiply_sc(s, n));
        const CosineSeries res =
            add(add(scale(n_xx, p.d_n), scale(flux, p.chi0)), logistic);
        return res.c;
    }

    // Model 2, cleared by c^2:
    //   (d_n n'' + r n(1-n)) c^2 + chi0 (n c'^2 - n c c'' - n' c c')
    {
        const double cmin = chemical_series_minimum(spec, p, M);
        double cmax = 0.0;
        for (double v : c.c) cmax += std::abs(v);
        if (!(cmin > 1e-6 * cmax))
            throw ModelError(
                "chemical series is not positive over the period; the "
                "pattern leaves the model's validity region");
    }
    const SineSeries c_x = differentiate(c);
    const CosineSeries c_xx = differentiate(c_x);
    const SineSeries n_x = differentiate(n);
    const CosineSeries c_sq = multiply_cc(c, c);

    const CosineSeries base =
        multiply_cc(add(scale(n_xx, p.d_n), logistic), c_sq);
    const CosineSeries grad_sq = multiply_cc(n, multiply_ss(c_x, c_x));
    const CosineSeries curvature =
        scale(multiply_cc(multiply_cc(n, c), c_xx), -1.0);
    const CosineSeries cross =
        scale(multiply_ss(multiply_sc(n_x, c), c_x), -1.0);
    const CosineSeries res =
        add(base, scale(add(add(grad_sq, curvature), cross), p.chi0));
    return res.c;
}

GenericResiduals generic_residuals(const AmplitudeSpectrum& spec,
                                   const ModelParams& p, int M,
                                   const GenericOptions& opts) {
    check_truncation(p.model, M);
    if (spec.order() < M)
        throw ModelError("spectrum order is below the requested truncation");
    const std::vector<double> full = full_harmonic_residuals(spec, p, M);

    GenericResiduals out;
    std::vector<int> tags = system_tags(p.model, M);
    if (opts.include_dc && tags.front() != 0) tags.insert(tags.begin(), 0);
    for (int t : tags) {
        out.tags.push_back(t);
        out.values.push_back(t < static_cast<int>(full.size()) ? full[t] : 0.0);
    }
    if (opts.include_leakage) {
        for (int t = system_tags(p.model, M).back() + 1;
             t < static_cast<int>(full.size()); ++t) {
            out.leakage_tags.push_back(t);
            out.leakage.push_back(full[t]);
        }
    }
    return out;
}

ForwardResult forward_galerkin_solve(const ModelParams& p, int M,
                                     const AmplitudeSpectrum& seed,
                                     const ForwardOptions& opts) {
    p.validate();
    check_truncation(p.model, M);

    std::vector<double> a(M + 1, 0.0);
    for (int i = 0; i <= M && i <= seed.order(); ++i) a[i] = seed.a(i);

    auto eval = [&](const std::vector<double>& amps,
                    std::vector<double>& f) -> bool {
        AmplitudeSpectrum s;
        s.alpha = amps;
        try {
            const std::vector<double> full = full_harmonic_residuals(s, p, M);
            f.assign(full.begin(), full.begin() + (M + 1));
        } catch (const ModelError&) {
            return false;  // stepped outside the validity region
        }
        return true;
    };
    auto max_norm = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    };

    std::vector<double> f;
    if (!eval(a, f))
        throw GalerkinError("seed lies outside the model's validity region",
                            a, std::numeric_limits<double>::infinity());

    int iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        if (max_norm(f) < opts.tolerance) break;

        // forward-difference Jacobian
        Matrix jac(M + 1, M + 1);
        std::vector<double> ah = a, fh;
        for (int j = 0; j <= M; ++j) {
            const double h = 1e-7 * (1.0 + std::abs(a[j]));
            ah[j] = a[j] + h;
            if (!eval(ah, fh))
                throw GalerkinError("Jacobian probe left the validity region",
                                    a, max_norm(f));
            for (int i = 0; i <= M; ++i) jac.at(i, j) = (fh[i] - f[i]) / h;
            ah[j] = a[j];
        }

        std::vector<double> rhs(f), step;
        for (double& v : rhs) v = -v;
        if (!solve_linear(jac, rhs, step))
            throw GalerkinError("singular Newton system", a, max_norm(f));

        // damped update: halve until the residual actually drops
        const double f0 = max_norm(f);
        double t = 1.0;
        bool accepted = false;
        for (int halving = 0; halving < 40; ++halving) {
            std::vector<double> trial(a);
            for (int i = 0; i <= M; ++i) trial[i] += t * step[i];
            std::vector<double> ft;
            if (eval(trial, ft) && max_norm(ft) < f0) {
                a = std::move(trial);
                f = std::move(ft);
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted)
            throw GalerkinError("Newton damping stalled", a, f0);
    }

    const double norm_inf = max_norm(f);
    if (norm_inf >= opts.tolerance)
        throw GalerkinError("Newton did not converge within the iteration "
                            "budget", a, norm_inf);

    ForwardResult out;
    out.spectrum.alpha = a;
    out.spectrum.beta.assign(M + 1, 0.0);
    out.spectrum.beta[0] = a[0];
    for (int i = 1; i <= M; ++i)
        out.spectrum.beta[i] = beta_relation(a[i], i, p.d_c, p.k);
    double two_norm = 0.0;
    for (double v : f) two_norm += v * v;
    out.residual_norm = std::sqrt(two_norm);
    out.iterations = iter;
    // Homogeneous-branch classification. Besides exact (1,0,..) and (0,..),
    // Newton can stall just short of the extinct state, where residuals are
    // quartically small; amplitudes far below the models' unit carrying
    // capacity mean a homogeneous outcome, not a pattern.
    double pattern = 0.0;
    for (int i = 1; i <= M; ++i) pattern = std::max(pattern, std::abs(a[i]));
    out.trivial = pattern < 1e-3 || std::abs(a[0]) < 2e-2;
    return out;
}

ForwardResult forward_galerkin_branch(const ModelParams& p, int M,
                                      const ForwardOptions& opts) {
    p.validate();
    check_truncation(p.model, M);

    // candidate pattern amplitudes; for Model 1 the M=1 truncation has the
    // closed form alpha_0 = (d_n k^2 - r)/(chi0 k^2/(1+d_c k^2) - 2r),
    // alpha_1^2 = 2 alpha_0 (1 - alpha_0), which makes a strong first guess
    std::vector<double> ladder;
    {
        const double k2 = p.k * p.k;
        const double denom = p.chi0 * k2 / (1.0 + p.d_c * k2) - 2.0 * p.r;
        if (std::abs(denom) > 1e-12) {
            const double a0 = (p.d_n * k2 - p.r) / denom;
            if (a0 > 0.0 && a0 < 1.0)
                ladder.push_back(std::sqrt(2.0 * a0 * (1.0 - a0)));
        }
    }
    for (double a1 : {0.6, 0.4, 0.8, 0.2, 0.9, 0.1, 0.05})
        ladder.push_back(a1);

    GalerkinError last("no nontrivial branch found", {}, 0.0);
    for (double a1 : ladder) {
        // DC-consistent base level for the seed
        const double inner = 1.0 - 2.0 * a1 * a1;
        const double a0 = inner > 0.0 ? 0.5 * (1.0 + std::sqrt(inner)) : 0.6;

        AmplitudeSpectrum seed;
        seed.alpha.assign(2, 0.0);
        seed.alpha[0] = a0;
        seed.alpha[1] = a1;
        ForwardResult base;
        try {
            base = forward_galerkin_solve(p, 1, seed, opts);
        } catch (const GalerkinError& e) {
            last = e;
            continue;
        }
        if (base.trivial) continue;
        if (M == 1) return base;

        // lift with the quadratic cascade alpha_{i+1} ~ alpha_i * alpha_1
        AmplitudeSpectrum lifted;
        lifted.alpha.assign(M + 1, 0.0);
        lifted.alpha[0] = base.spectrum.a(0);
        lifted.alpha[1] = base.spectrum.a(1);
        for (int i = 2; i <= M; ++i)
            lifted.alpha[i] =
                0.25 * lifted.alpha[i - 1] * lifted.alpha[1];
        try {
            ForwardResult full = forward_galerkin_solve(p, M, lifted, opts);
            if (!full.trivial) return full;
        } catch (const GalerkinError& e) {
            last = e;
        }
    }
    throw GalerkinError(
        "forward Galerkin solve landed on the homogeneous branch for every "
        "seed (trivial solution)",
        last.last_iterate, last.residual_norm);
}

}  // namespace turinv

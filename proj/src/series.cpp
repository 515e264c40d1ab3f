#include "turinv/series.hpp"

#include <cmath>
#include <cstdlib>

namespace turinv {

namespace {

void require_positive_wavenumber(double k) {
    if (!(k > 0.0)) throw SeriesError("wavenumber must be positive");
}

void require_shared_wavenumber(double ka, double kb) {
    const double scale = std::abs(ka) + std::abs(kb);
    if (std::abs(ka - kb) > 1e-12 * scale)
        throw SeriesError("operands have mismatched wavenumbers");
}

}  // namespace

CosineSeries::CosineSeries(std::vector<double> coeffs, double wavenumber)
    : c(std::move(coeffs)), k(wavenumber) {
    require_positive_wavenumber(k);
    if (c.empty()) c.push_back(0.0);
}

double CosineSeries::evaluate(double x) const {
    double acc = 0.0;
    for (int i = 0; i < static_cast<int>(c.size()); ++i)
        acc += c[i] * std::cos(i * k * x);
    return acc;
}

SineSeries::SineSeries(std::vector<double> coeffs, double wavenumber)
    : s(std::move(coeffs)), k(wavenumber) {
    require_positive_wavenumber(k);
}

double SineSeries::evaluate(double x) const {
    double acc = 0.0;
    for (int i = 1; i <= degree(); ++i)
        acc += s[i - 1] * std::sin(i * k * x);
    return acc;
}

SineSeries differentiate(const CosineSeries& f) {
    const int deg = f.degree();
    std::vector<double> s(std::max(deg, 0), 0.0);
    for (int i = 1; i <= deg; ++i) s[i - 1] = -(i * f.k) * f.c[i];
    return SineSeries(std::move(s), f.k);
}

CosineSeries differentiate(const SineSeries& f) {
    std::vector<double> c(f.degree() + 1, 0.0);
    for (int i = 1; i <= f.degree(); ++i) c[i] = (i * f.k) * f.coeff(i);
    return CosineSeries(std::move(c), f.k);
}

CosineSeries multiply_cc(const CosineSeries& f, const CosineSeries& g) {
    require_shared_wavenumber(f.k, g.k);
    std::vector<double> c(f.degree() + g.degree() + 1, 0.0);
    for (int i = 0; i <= f.degree(); ++i) {
        for (int j = 0; j <= g.degree(); ++j) {
            const double half = 0.5 * f.c[i] * g.c[j];
            // cos(a)cos(b) = [cos(a-b) + cos(a+b)] / 2
            c[std::abs(i - j)] += half;
            c[i + j] += half;
        }
    }
    return CosineSeries(std::move(c), f.k);
}

CosineSeries multiply_ss(const SineSeries& f, const SineSeries& g) {
    require_shared_wavenumber(f.k, g.k);
    std::vector<double> c(f.degree() + g.degree() + 1, 0.0);
    for (int i = 1; i <= f.degree(); ++i) {
        for (int j = 1; j <= g.degree(); ++j) {
            const double half = 0.5 * f.coeff(i) * g.coeff(j);
            // sin(a)sin(b) = [cos(a-b) - cos(a+b)] / 2
            c[std::abs(i - j)] += half;
            c[i + j] -= half;
        }
    }
    return CosineSeries(std::move(c), f.k);
}

SineSeries multiply_sc(const SineSeries& f, const CosineSeries& g) {
    require_shared_wavenumber(f.k, g.k);
    const int deg = f.degree() + g.degree();
    std::vector<double> s(std::max(deg, 0), 0.0);
    for (int i = 1; i <= f.degree(); ++i) {
        for (int j = 0; j <= g.degree(); ++j) {
            const double half = 0.5 * f.coeff(i) * g.c[j];
            // sin(a)cos(b) = [sin(a+b) + sin(a-b)] / 2, sin(-m) = -sin(m)
            s[i + j - 1] += half;
            const int d = i - j;
            if (d > 0)
                s[d - 1] += half;
            else if (d < 0)
                s[-d - 1] -= half;
            // d == 0 contributes sin(0) = 0
        }
    }
    return SineSeries(std::move(s), f.k);
}

CosineSeries add(const CosineSeries& f, const CosineSeries& g) {
    require_shared_wavenumber(f.k, g.k);
    std::vector<double> c(std::max(f.c.size(), g.c.size()), 0.0);
    for (int i = 0; i < static_cast<int>(c.size()); ++i)
        c[i] = f.coeff(i) + g.coeff(i);
    return CosineSeries(std::move(c), f.k);
}

CosineSeries scale(const CosineSeries& f, double factor) {
    CosineSeries out = f;
    for (double& v : out.c) v *= factor;
    return out;
}

TruncationResult truncate(const CosineSeries& f, int M) {
    if (M < 0) throw SeriesError("truncation order must be >= 0");
    TruncationResult out;
    out.series.k = f.k;
    out.series.c.assign(f.c.begin(),
                        f.c.begin() + std::min<int>(M + 1, f.c.size()));
    out.series.c.resize(M + 1, 0.0);
    for (int i = M + 1; i <= f.degree(); ++i)
        out.leakage = std::max(out.leakage, std::abs(f.c[i]));
    return out;
}

}  // namespace turinv

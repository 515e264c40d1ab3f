// Truncated cosine/sine series over a common wavenumber k, with exact
// product-to-sum algebra. This is the mechanical engine behind the harmonic
// balance systems: products of trigonometric polynomials are expanded
// exactly (degree grows), and truncation happens only when a caller asks
// for it.
//
// Conventions:
//   CosineSeries f(x) = sum_{i=0..M} c[i] cos(i k x)
//   SineSeries   g(x) = sum_{i=1..M} s_i sin(i k x)   (no constant term)
// SineSeries stores s_1..s_M in a plain vector, i.e. coeff(i) == s[i-1].
// Negative harmonics produced by product-to-sum identities are folded with
// cos(-m) = cos(m), sin(-m) = -sin(m).

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace turinv {

class SeriesError : public std::runtime_error {
public:
    explicit SeriesError(const std::string& what) : std::runtime_error(what) {}
};

struct CosineSeries {
    std::vector<double> c;  // c[i] multiplies cos(i k x)
    double k = 1.0;

    CosineSeries() = default;
    CosineSeries(std::vector<double> coeffs, double wavenumber);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    double coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : 0.0;
    }
    double evaluate(double x) const;
};

struct SineSeries {
    std::vector<double> s;  // s[i-1] multiplies sin(i k x)
    double k = 1.0;

    SineSeries() = default;
    SineSeries(std::vector<double> coeffs, double wavenumber);

    int degree() const { return static_cast<int>(s.size()); }
    double coeff(int i) const {
        return (i >= 1 && i <= degree()) ? s[i - 1] : 0.0;
    }
    double evaluate(double x) const;
};

// d/dx of a cosine series: sum -(i k) c_i sin(i k x). Degree preserved.
SineSeries differentiate(const CosineSeries& f);

// d/dx of a sine series: sum (i k) s_i cos(i k x).
CosineSeries differentiate(const SineSeries& f);

// Exact products via product-to-sum identities. Operands must share k.
CosineSeries multiply_cc(const CosineSeries& f, const CosineSeries& g);
CosineSeries multiply_ss(const SineSeries& f, const SineSeries& g);
SineSeries multiply_sc(const SineSeries& f, const CosineSeries& g);

CosineSeries add(const CosineSeries& f, const CosineSeries& g);
CosineSeries scale(const CosineSeries& f, double factor);

struct TruncationResult {
    CosineSeries series;
    double leakage = 0.0;  // max |coefficient| of the discarded tail
};

// Keep harmonics 0..M; report the largest dropped coefficient magnitude.
TruncationResult truncate(const CosineSeries& f, int M);

}  // namespace turinv

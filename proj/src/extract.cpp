#include "turinv/extract.hpp"

#include <algorithm>
#include <cmath>

namespace turinv {

std::vector<double> project_amplitudes(const std::vector<double>& field,
                                       const Grid1D& g, int i_max) {
    if (static_cast<int>(field.size()) != g.N)
        throw ExtractionError("field length does not match grid");
    if (i_max >= g.N / 2)
        throw ExtractionError("requested modes beyond grid resolution");
    std::vector<double> a(i_max + 1, 0.0);
    const double dx = g.dx();
    for (int j = 0; j < g.N; ++j) a[0] += field[j];
    a[0] *= dx / g.L;
    for (int i = 1; i <= i_max; ++i) {
        double acc = 0.0;
        for (int j = 0; j < g.N; ++j)
            acc += field[j] * std::cos(i * M_PI * g.node(j) / g.L);
        a[i] = 2.0 * acc * dx / g.L;
    }
    return a;
}

int detect_fundamental(const std::vector<double>& a, double noise_floor) {
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    const double floor = noise_floor * std::max(scale, 1e-300);
    int best = 0;
    double best_mag = floor;
    for (int i = 1; i < static_cast<int>(a.size()); ++i) {
        if (std::abs(a[i]) > best_mag) {  // strict: ties go to the smaller m
            best_mag = std::abs(a[i]);
            best = i;
        }
    }
    if (best == 0)
        throw ExtractionError("homogeneous field: no mode above noise floor");
    return best;
}

ResampledSpectrum resample_to_fundamental(const std::vector<double>& a, int m,
                                          int M) {
    if (m < 1) throw ExtractionError("fundamental mode must be >= 1");
    if (M * m >= static_cast<int>(a.size()))
        throw ExtractionError("harmonic M*m exceeds available coefficients");
    ResampledSpectrum out;
    out.values.push_back(a[0]);
    for (int i = 1; i <= M; ++i) out.values.push_back(a[i * m]);
    for (int j = 1; j < static_cast<int>(a.size()); ++j)
        if (j % m != 0)
            out.contamination = std::max(out.contamination, std::abs(a[j]));
    return out;
}

ExtractionResult extract_spectrum(const FieldPair& f, const Grid1D& g,
                                  const ExtractionOptions& opts) {
    const int probe = opts.i_max > 0
                          ? opts.i_max
                          : std::min(g.N / 2 - 1, std::max(4 * opts.M, 16));
    const std::vector<double> an = project_amplitudes(f.n, g, probe);
    const std::vector<double> ac = project_amplitudes(f.c, g, probe);

    ExtractionResult out;
    out.M = opts.M;
    out.fundamental_mode = detect_fundamental(an, opts.noise_floor);
    out.k_est = out.fundamental_mode * M_PI / g.L;
    if (opts.M * out.fundamental_mode >= static_cast<int>(an.size()))
        throw ExtractionError("pattern mode too high for the requested M at "
                              "this resolution");

    ResampledSpectrum rn = resample_to_fundamental(an, out.fundamental_mode,
                                                   opts.M);
    ResampledSpectrum rc = resample_to_fundamental(ac, out.fundamental_mode,
                                                   opts.M);
    out.spectrum.alpha = rn.values;
    out.spectrum.beta = rc.values;
    out.contamination = rn.contamination;

    double kept = 0.0, total = 0.0;
    for (int i = 1; i < static_cast<int>(an.size()); ++i) {
        total += an[i] * an[i];
        if (i <= opts.M * out.fundamental_mode) kept += an[i] * an[i];
    }
    out.tail_energy = total > 0.0 ? (total - kept) / total : 0.0;
    return out;
}

}  // namespace turinv

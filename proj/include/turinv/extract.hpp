// Measurement side of the pipeline: cosine-mode amplitudes of gridded
// fields by midpoint quadrature, fundamental-mode detection, and the slice
// onto harmonics of the fundamental.

#pragma once

#include <vector>

#include "turinv/model.hpp"
#include "turinv/simulate.hpp"

namespace turinv {

class ExtractionError : public ModelError {
public:
    explicit ExtractionError(const std::string& what) : ModelError(what) {}
};

// a_0 = (1/L) integral f dx; a_i = (2/L) integral f cos(i pi x / L) dx,
// composite midpoint rule on cell centers. i_max must stay below N/2.
std::vector<double> project_amplitudes(const std::vector<double>& field,
                                       const Grid1D& g, int i_max);

// Dominant mode index m >= 1 (ties break toward the smaller m). Throws
// ExtractionError("homogeneous field") when everything above DC sits under
// noise_floor * max|a|.
int detect_fundamental(const std::vector<double>& a,
                       double noise_floor = 1e-6);

struct ResampledSpectrum {
    std::vector<double> values;   // (a_0, a_m, a_2m, ..., a_Mm)
    double contamination = 0.0;   // max |a_j| off the harmonic comb, j >= 1
};

// Slice the raw mode list onto harmonics of the fundamental m.
ResampledSpectrum resample_to_fundamental(const std::vector<double>& a, int m,
                                          int M);

struct ExtractionResult {
    AmplitudeSpectrum spectrum;  // alpha from n, beta from c
    double k_est = 0.0;          // m pi / L
    int fundamental_mode = 0;
    int M = 0;
    double tail_energy = 0.0;    // non-DC energy above mode M*m, fractional
    double contamination = 0.0;  // off-harmonic leftovers in the n modes
};

struct ExtractionOptions {
    int M = 3;                   // truncation order of the spectrum
    double noise_floor = 1e-6;
    int i_max = 0;               // 0: choose from M and the detected mode
};

// Full measurement map: project both fields, detect the fundamental from
// the n amplitudes, and slice both onto its harmonics.
ExtractionResult extract_spectrum(const FieldPair& f, const Grid1D& g,
                                  const ExtractionOptions& opts = {});

}  // namespace turinv

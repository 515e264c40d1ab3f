// File formats: field CSV (x,n,c), spectrum JSON, recovery JSON,
// dispersion CSV, and the flat sectioned key=value experiment config.
// Floats are written with 17 significant digits so outputs and goldens
// compare exactly.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "turinv/dispersion.hpp"
#include "turinv/extract.hpp"
#include "turinv/invert.hpp"
#include "turinv/model.hpp"
#include "turinv/simulate.hpp"

namespace turinv {

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

std::string format_double(double v);  // %.17g

// ---- field CSV ----------------------------------------------------------
void write_field_csv(const std::filesystem::path& path, const Grid1D& g,
                     const FieldPair& f);

struct FieldFile {
    Grid1D grid;
    FieldPair fields;
};
FieldFile read_field_csv(const std::filesystem::path& path);

// ---- spectrum JSON ------------------------------------------------------
struct SpectrumFile {
    int model = 1;        // optional in the schema; 0 when absent
    double L = 0.0;
    int m = 1;            // fundamental mode index
    double k = 0.0;       // m pi / L
    int M = 0;
    AmplitudeSpectrum spectrum;
    std::string source;   // "pde" | "galerkin"; optional provenance hint
};
void write_spectrum_json(const std::filesystem::path& path,
                         const SpectrumFile& s);
SpectrumFile read_spectrum_json(const std::filesystem::path& path);

// ---- recovery JSON ------------------------------------------------------
void write_recovery_json(const std::filesystem::path& path, Model model,
                         int M, const RecoveryResult& r);

// ---- dispersion CSV -----------------------------------------------------
// chi0_boundary: instability threshold of the configured rates (0 to
// omit); recorded in the header comment alongside the verdict.
void write_dispersion_csv(const std::filesystem::path& path,
                          const DispersionReport& rep,
                          double chi0_boundary = 0.0);

// ---- experiment config --------------------------------------------------
// Flat key=value entries grouped in [sections]; '#' starts a comment.
// Unknown sections or keys are rejected with file:line diagnostics.
struct ExperimentConfig {
    Model model = Model::Model1;
    double d_n = 1.0, d_c = 1.0, chi0 = 1.0, r = 1.0;

    double L = 10.0;
    int N = 256;

    int ic_mode = 0;  // 0: most unstable mode from the scan
    double ic_amplitude = 1e-2;
    bool ic_noise = false;
    int ic_max_mode = 8;
    uint64_t seed = 1;

    double steady_tol = 1e-9;
    double t_max = 1e4;
    double cfl = 0.2;

    int M = 3;  // defaulted from the model when absent (3 for 1, 2 for 2)
    double noise_floor = 1e-6;

    // Fit on the harmonic-closure equations by default: the printed
    // inverse systems carry higher-harmonic rows whose relative truncation
    // error does not shrink with pattern amplitude, which biases a
    // least-squares fit on measured data. 'printed' stays available.
    EquationSet equations = EquationSet::GalerkinClosure;
    bool equations_explicit = false;
    bool use_beta = true;  // feed measured beta into the fit when present
    int fit_M = 0;         // harmonics ingested by the fit; 0: M + 1
    bool fix_k = true;
    bool fix_r = true;
    double r_ref = 0.0;      // 0: use the config's r (the known calibration)
    double max_error = 0.1;  // roundtrip acceptance on relative errors

    std::filesystem::path out_dir = "out";

    ModelParams params() const;  // k unset (comes from the pattern)
};

ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace turinv

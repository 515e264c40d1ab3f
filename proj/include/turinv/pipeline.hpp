// Experiment orchestration shared by the CLI and the test suites:
// dispersion scan, simulate-to-pattern, spectrum extraction, inversion, and
// the full roundtrip with per-component error reporting. Every stage writes
// through the same serializers, so a roundtrip reproduces the stage
// commands byte for byte.

#pragma once

#include <filesystem>
#include <map>

#include "turinv/io.hpp"

namespace turinv {

namespace artifact {
inline constexpr const char* dispersion_csv = "dispersion.csv";
inline constexpr const char* field_csv = "field.csv";
inline constexpr const char* spectrum_json = "spectrum.json";
inline constexpr const char* recovery_json = "recovery.json";
inline constexpr const char* roundtrip_json = "roundtrip.json";
}  // namespace artifact

DispersionReport run_dispersion(const ExperimentConfig& cfg);

struct SimulationOutput {
    Grid1D grid;
    FieldPair state;
    double rate_norm = 0.0;
    int64_t steps = 0;
    int seeded_mode = 0;  // cosine mode used for the initial bump
};

// Pick the initial mode from the scan (unless pinned in the config) and run
// to the stationary state.
SimulationOutput run_simulation(const ExperimentConfig& cfg);

SpectrumFile spectrum_from_fields(const ExperimentConfig& cfg,
                                  const Grid1D& g, const FieldPair& f);

// Synthetic data path: wavenumber from the scan, amplitudes from the
// forward Galerkin solve. Throws GalerkinError when no nontrivial branch is
// reachable.
SpectrumFile spectrum_from_galerkin(const ExperimentConfig& cfg);

// Inversion options implied by the config: r_ref defaults to the config's
// own growth rate (the declared kinetic calibration).
InverseOptions inverse_options(const ExperimentConfig& cfg);

RecoveryResult invert_spectrum(const ExperimentConfig& cfg,
                               const SpectrumFile& spec);

struct RoundtripReport {
    bool degenerate = false;
    std::string note;
    ModelParams true_params;  // k filled from the realized pattern
    SpectrumFile spectrum;
    RecoveryResult recovery;
    std::map<std::string, double> rel_errors;
    double max_rel_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    double beta_consistency = 0.0;  // measured beta vs the relations
    double truncation_l2 = 0.0;     // ansatz-vs-field relative L2 (PDE mode)
    std::vector<int> leakage_tags;
    std::vector<double> leakage;
};

// simulate -> extract -> invert (or forward-Galerkin -> invert), writing
// every stage artifact into out_dir.
RoundtripReport run_roundtrip(const ExperimentConfig& cfg,
                              bool galerkin_synthetic,
                              const std::filesystem::path& out_dir);

void write_roundtrip_json(const std::filesystem::path& path,
                          const RoundtripReport& rep);

}  // namespace turinv

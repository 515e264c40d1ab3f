// Core domain types shared across the toolkit: the two chemotaxis models,
// their parameter sets, and the cosine-amplitude measurement vectors.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace turinv {

// Model 1: density-dependent chemotaxis, chi(n,c) = chi0 * n
//   n_t = d_n n_xx - chi0 (n c_x)_x + r n (1 - n)
//   c_t = d_c c_xx + n - c
// Model 2: ratio-dependent chemotaxis, chi(n,c) = chi0 * n / c
//   n_t = d_n n_xx - chi0 ((n/c) c_x)_x + r n (1 - n)
//   c_t = d_c c_xx + n - c
enum class Model { Model1 = 1, Model2 = 2 };

std::string to_string(Model m);
Model model_from_int(int v);

struct ModelParams {
    Model model = Model::Model1;
    double d_n = 1.0;   // cell diffusion [length^2/time]
    double d_c = 1.0;   // chemical diffusion [length^2/time]
    double chi0 = 1.0;  // chemotactic sensitivity
    double r = 1.0;     // logistic growth rate [1/time]
    double k = 1.0;     // fundamental wavenumber [1/length]

    // All five scalars must be strictly positive.
    void validate() const;
};

// Paired cosine-mode amplitudes (alpha for cell density, beta for the
// chemical). beta may be left empty when only alpha was measured; the
// inversion path never needs it.
struct AmplitudeSpectrum {
    std::vector<double> alpha;
    std::vector<double> beta;

    int order() const { return static_cast<int>(alpha.size()) - 1; }
    double a(int i) const {
        return (i >= 0 && i < static_cast<int>(alpha.size())) ? alpha[i] : 0.0;
    }
    double b(int i) const {
        return (i >= 0 && i < static_cast<int>(beta.size())) ? beta[i] : 0.0;
    }
    bool has_beta() const { return !beta.empty(); }
};

class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace turinv

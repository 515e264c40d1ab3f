#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "turinv/residuals.hpp"

using namespace turinv;

namespace {

std::vector<double> hand_residuals(const AmplitudeSpectrum& s,
                                   const ModelParams& p, int M) {
    return p.model == Model::Model1 ? residuals_model1(s, p, M)
                                    : residuals_model2(s, p, M);
}

// A draw that stays inside Model 2's validity region (c > 0): base level
// near 1, harmonics decaying with index.
AmplitudeSpectrum random_spectrum(std::mt19937& rng, int M) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    AmplitudeSpectrum s;
    s.alpha.resize(M + 1);
    s.alpha[0] = 0.8 + 0.2 * U(rng);
    for (int i = 1; i <= M; ++i) s.alpha[i] = 0.3 * U(rng) / (i * i);
    return s;
}

ModelParams random_params(std::mt19937& rng, Model model) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    ModelParams p;
    p.model = model;
    p.d_n = std::pow(10.0, U(rng));
    p.d_c = std::pow(10.0, U(rng));
    p.chi0 = std::pow(10.0, U(rng));
    p.r = std::pow(10.0, U(rng));
    p.k = std::pow(10.0, 0.5 * U(rng));
    return p;
}

// chi0 at which the k-mode of the truncated system branches off the
// homogeneous state (1,1,...): (d_n k^2 + r)(d_c k^2 + 1)/k^2.
double branch_chi0(const ModelParams& p) {
    const double k2 = p.k * p.k;
    return (p.d_n * k2 + p.r) * (p.d_c * k2 + 1.0) / k2;
}

}  // namespace

TEST_CASE("beta_relation basics") {
    CHECK(beta_relation(0.2, 1, 1.0, 1.0) == doctest::Approx(0.1));
    CHECK(beta_relation(0.3, 2, 0.25, 2.0) == doctest::Approx(0.06));
    CHECK(beta_relation(0.0, 3, 2.7, 0.4) == 0.0);
    CHECK_THROWS_AS(beta_relation(0.1, 0, 1.0, 1.0), ModelError);
    CHECK_THROWS_AS(beta_relation(0.1, 1, -1.0, 1.0), ModelError);
}

TEST_CASE("system tags match the printed systems") {
    CHECK(system_tags(Model::Model1, 1) == std::vector<int>{1});
    CHECK(system_tags(Model::Model1, 2) == std::vector<int>{1, 2, 3});
    CHECK(system_tags(Model::Model1, 3) == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(system_tags(Model::Model2, 1) == std::vector<int>{0, 1, 2, 3});
    CHECK(system_tags(Model::Model2, 2) == std::vector<int>{0, 1, 2, 3, 4});
    CHECK_THROWS_AS(system_tags(Model::Model1, 4), ModelError);
    CHECK_THROWS_AS(system_tags(Model::Model2, 3), ModelError);
}

TEST_CASE("hand-transcribed and generic residuals agree to 1e-12") {
    std::mt19937 rng(123);
    const struct { Model model; int M; } systems[] = {
        {Model::Model1, 1}, {Model::Model1, 2}, {Model::Model1, 3},
        {Model::Model2, 1}, {Model::Model2, 2},
    };
    for (const auto& sys : systems) {
        for (int draw = 0; draw < 300; ++draw) {
            AmplitudeSpectrum s = random_spectrum(rng, sys.M);
            ModelParams p = random_params(rng, sys.model);
            std::vector<double> hand, generic;
            try {
                hand = hand_residuals(s, p, sys.M);
                generic = generic_residuals(s, p, sys.M).values;
            } catch (const ModelError&) {
                continue;  // Model 2 validity rejection; both sides agree on it
            }
            REQUIRE(hand.size() == generic.size());
            double scale = 0.0;
            for (double v : hand) scale = std::max(scale, std::abs(v));
            for (double v : generic) scale = std::max(scale, std::abs(v));
            for (size_t i = 0; i < hand.size(); ++i)
                CHECK(std::abs(hand[i] - generic[i]) <=
                      1e-12 * std::max(scale, 1e-300));
        }
    }
}

TEST_CASE("homogeneous states zero every system") {
    std::mt19937 rng(77);
    for (double level : {1.0, 0.0}) {
        AmplitudeSpectrum s;
        s.alpha = {level, 0.0, 0.0, 0.0};
        for (int draw = 0; draw < 25; ++draw) {
            for (int M : {1, 2, 3}) {
                ModelParams p = random_params(rng, Model::Model1);
                for (double v : residuals_model1(s, p, M)) CHECK(v == 0.0);
                for (double v : generic_residuals(s, p, M).values)
                    CHECK(v == 0.0);
            }
            if (level > 0.0) {  // Model 2 needs c > 0
                for (int M : {1, 2}) {
                    ModelParams p = random_params(rng, Model::Model2);
                    for (double v : residuals_model2(s, p, M)) CHECK(v == 0.0);
                    for (double v : generic_residuals(s, p, M).values)
                        CHECK(v == 0.0);
                }
            }
        }
    }
}

TEST_CASE("generic residuals zero on homogeneous input regardless of flags") {
    AmplitudeSpectrum s;
    s.alpha = {1.0, 0.0, 0.0, 0.0};
    ModelParams p;
    p.model = Model::Model1;
    GenericOptions opts;
    opts.include_dc = true;
    opts.include_leakage = true;
    GenericResiduals g = generic_residuals(s, p, 3, opts);
    for (double v : g.values) CHECK(v == 0.0);
    for (double v : g.leakage) CHECK(v == 0.0);
    CHECK(g.tags.front() == 0);
}

TEST_CASE("joint scaling of {d_n, chi0, r} scales the residual vector") {
    std::mt19937 rng(31);
    for (const auto& [model, M] :
         std::vector<std::pair<Model, int>>{{Model::Model1, 3},
                                            {Model::Model1, 2},
                                            {Model::Model2, 2}}) {
        for (int draw = 0; draw < 20; ++draw) {
            AmplitudeSpectrum s = random_spectrum(rng, M);
            ModelParams p = random_params(rng, model);
            ModelParams q = p;
            const double lambda = 3.7;
            q.d_n *= lambda;
            q.chi0 *= lambda;
            q.r *= lambda;
            std::vector<double> base, scaled;
            try {
                base = hand_residuals(s, p, M);
                scaled = hand_residuals(s, q, M);
            } catch (const ModelError&) {
                continue;
            }
            for (size_t i = 0; i < base.size(); ++i)
                CHECK(scaled[i] ==
                      doctest::Approx(lambda * base[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("wavenumber rescaling with compensated diffusivities is exact") {
    // k -> mu k with (d_n, d_c, chi0) -> (d_n, d_c, chi0)/mu^2 leaves every
    // equation unchanged: the systems see only d_n k^2, chi0 k^2, d_c k^2.
    std::mt19937 rng(32);
    for (const auto& [model, M] :
         std::vector<std::pair<Model, int>>{{Model::Model1, 3},
                                            {Model::Model2, 2}}) {
        AmplitudeSpectrum s = random_spectrum(rng, M);
        ModelParams p = random_params(rng, model);
        ModelParams q = p;
        const double mu = 1.9;
        q.k *= mu;
        q.d_n /= mu * mu;
        q.d_c /= mu * mu;
        q.chi0 /= mu * mu;
        std::vector<double> base, moved;
        try {
            base = hand_residuals(s, p, M);
            moved = hand_residuals(s, q, M);
        } catch (const ModelError&) {
            continue;
        }
        for (size_t i = 0; i < base.size(); ++i)
            CHECK(moved[i] == doctest::Approx(base[i]).epsilon(1e-12));
    }
}

TEST_CASE("Model 1 nesting: M=2 with alpha_2 = 0 reduces to M=1") {
    std::mt19937 rng(55);
    for (int draw = 0; draw < 30; ++draw) {
        AmplitudeSpectrum s = random_spectrum(rng, 2);
        s.alpha[2] = 0.0;
        ModelParams p = random_params(rng, Model::Model1);
        std::vector<double> m2 = residuals_model1(s, p, 2);
        std::vector<double> m1 = residuals_model1(s, p, 1);
        CHECK(m2[0] == doctest::Approx(m1[0]).epsilon(1e-14));
        // the tag-2 equation collapses to the M=1 truncation's dropped
        // cos(2kx) coefficient
        const double b1 = beta_relation(s.a(1), 1, p.d_c, p.k);
        const double leak2 =
            p.chi0 * p.k * p.k * s.a(1) * b1 - 0.5 * p.r * s.a(1) * s.a(1);
        CHECK(m2[1] == doctest::Approx(leak2).epsilon(1e-12));
        CHECK(m2[2] == doctest::Approx(0.0));
    }
}

TEST_CASE("Model 2 nesting: M=2 with alpha_2 = 0 reduces to the M=1 series") {
    std::mt19937 rng(56);
    for (int draw = 0; draw < 30; ++draw) {
        AmplitudeSpectrum s = random_spectrum(rng, 2);
        s.alpha[2] = 0.0;
        ModelParams p = random_params(rng, Model::Model2);
        std::vector<double> m2, full1;
        try {
            m2 = residuals_model2(s, p, 2);
            full1 = full_harmonic_residuals(s, p, 1);
        } catch (const ModelError&) {
            continue;
        }
        // with alpha_2 = beta_2 = 0 the two truncations build the same
        // trigonometric polynomial, so harmonics 0..4 must coincide
        for (int t = 0; t <= 4; ++t)
            CHECK(m2[t] == doctest::Approx(full1[t]).epsilon(1e-12));
    }
}

TEST_CASE("Model 1 M=3 leakage is the cos(6kx) coefficient") {
    std::mt19937 rng(60);
    for (int draw = 0; draw < 20; ++draw) {
        AmplitudeSpectrum s = random_spectrum(rng, 3);
        ModelParams p = random_params(rng, Model::Model1);
        GenericOptions opts;
        opts.include_leakage = true;
        GenericResiduals g = generic_residuals(s, p, 3, opts);
        REQUIRE(g.leakage_tags == std::vector<int>{6});
        const double b3 = beta_relation(s.a(3), 3, p.d_c, p.k);
        const double want = 9.0 * p.chi0 * p.k * p.k * s.a(3) * b3 -
                            0.5 * p.r * s.a(3) * s.a(3);
        CHECK(g.leakage[0] == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("Model 2 M=2 leakage covers harmonics 5..8") {
    AmplitudeSpectrum s;
    s.alpha = {0.9, 0.2, 0.05};
    ModelParams p;
    p.model = Model::Model2;
    GenericOptions opts;
    opts.include_leakage = true;
    GenericResiduals g = generic_residuals(s, p, 2, opts);
    CHECK(g.leakage_tags == std::vector<int>{5, 6, 7, 8});
}

TEST_CASE("Model 2 rejects a sign-changing chemical series") {
    AmplitudeSpectrum s;
    s.alpha = {0.1, 2.0};  // c dips far below zero
    ModelParams p;
    p.model = Model::Model2;
    p.d_c = 1e-9;  // beta_1 ~ alpha_1
    CHECK_THROWS_AS(residuals_model2(s, p, 1), ModelError);
    CHECK_THROWS_AS(generic_residuals(s, p, 1), ModelError);
}

TEST_CASE("forward solve: subcritical chi0 lands on the homogeneous branch") {
    ModelParams p;
    p.model = Model::Model1;
    p.d_n = 0.5;
    p.d_c = 1.0;
    p.r = 0.2;
    p.k = 1.0;
    p.chi0 = 0.5 * branch_chi0(p);
    AmplitudeSpectrum seed;
    seed.alpha = {1.0, 0.1};
    ForwardResult fwd = forward_galerkin_solve(p, 1, seed);
    CHECK(fwd.trivial);
    CHECK(fwd.spectrum.a(0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("forward solve: Turing-regime draws give consistent spectra") {
    std::mt19937 rng(404);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int nontrivial = 0;
    for (int draw = 0; draw < 12; ++draw) {
        ModelParams p;
        p.model = (draw % 2 == 0) ? Model::Model1 : Model::Model2;
        p.d_c = 0.5 + 2.0 * U(rng);
        p.k = 0.7 + 0.8 * U(rng);
        p.d_n = (0.3 + 0.7 * U(rng));
        p.r = (0.2 + 0.4 * U(rng)) * p.d_n * p.k * p.k;
        // Model 1 branches supercritically, Model 2 subcritically: sample
        // chi0 above / below the mode threshold accordingly
        const double mult = p.model == Model::Model1
                                ? 1.1 + 0.3 * U(rng)
                                : 0.90 + 0.08 * U(rng);
        p.chi0 = mult * branch_chi0(p);
        const int M = p.model == Model::Model1 ? 3 : 2;
        ForwardResult fwd;
        try {
            fwd = forward_galerkin_branch(p, M);
        } catch (const GalerkinError&) {
            continue;
        }
        ++nontrivial;
        CHECK(fwd.residual_norm < 1e-10);
        // harmonics 0..M of the truncated operator vanish at the solution
        std::vector<double> full = full_harmonic_residuals(fwd.spectrum, p, M);
        for (int i = 0; i <= M; ++i) CHECK(std::abs(full[i]) < 1e-10);
        // beta follows the relations exactly by construction
        for (int i = 1; i <= M; ++i)
            CHECK(fwd.spectrum.b(i) ==
                  doctest::Approx(beta_relation(fwd.spectrum.a(i), i, p.d_c,
                                                p.k)).epsilon(1e-15));
        CHECK(fwd.spectrum.b(0) == fwd.spectrum.a(0));
    }
    CHECK(nontrivial >= 6);
}

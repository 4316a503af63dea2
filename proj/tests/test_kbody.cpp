// k-body coefficient tests. The closed-form kernel is cross-checked against
// finite differences of the exact ladder, against references computed with an
// independent 200-digit evaluation, and against the small-k limits that can be
// written down by hand.

#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <random>
#include <utility>

#include "jcdress/dressed.hpp"
#include "jcdress/kbody.hpp"
#include "jcdress/mpfloat.hpp"
#include "jcdress/params.hpp"

using jcdress::Branch;
using jcdress::DressedLabel;
using jcdress::SystemParams;
using jcdress::ZeroDetuningSign;
namespace kb = jcdress::kbody;

namespace {

SystemParams make(double omega_c, double delta, double g,
                  ZeroDetuningSign sign = ZeroDetuningSign::FromAbove) {
    SystemParams p;
    p.omega_c = omega_c;
    p.delta = delta;
    p.g = g;
    p.zero_detuning_sign = sign;
    return p;
}

double rel_diff(double a, double b) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    if (scale == 0.0) return 0.0;
    return std::fabs(a - b) / scale;
}

} // namespace

TEST_CASE("resonant coefficients match the hand-derived small-k forms") {
    const double s2 = std::sqrt(2.0);
    const double s3 = std::sqrt(3.0);

    CHECK(kb::coeff_resonant(1.0, 1, ZeroDetuningSign::FromAbove) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(kb::coeff_resonant(1.0, 2, ZeroDetuningSign::FromAbove)
          == doctest::Approx(2.0 - s2).epsilon(1e-15));
    CHECK(kb::coeff_resonant(1.0, 3, ZeroDetuningSign::FromAbove)
          == doctest::Approx(-(3.0 - 3.0 * s2 + s3)).epsilon(1e-15));

    // The approach from below mirrors every coefficient.
    for (int k = 1; k <= 6; ++k) {
        const double above = kb::coeff_resonant(2.7, k, ZeroDetuningSign::FromAbove);
        const double below = kb::coeff_resonant(2.7, k, ZeroDetuningSign::FromBelow);
        CHECK(below == -above);
    }

    // g enters as an overall factor.
    for (int k = 1; k <= 5; ++k) {
        const double unit = kb::coeff_resonant(1.0, k, ZeroDetuningSign::FromAbove);
        const double scaled = kb::coeff_resonant(3.25, k, ZeroDetuningSign::FromAbove);
        CHECK(rel_diff(scaled, 3.25 * unit) < 1e-14);
    }

    CHECK_THROWS_AS(kb::coeff_resonant(1.0, 0, ZeroDetuningSign::FromAbove), std::domain_error);
    CHECK_THROWS_AS(kb::coeff_resonant(-1.0, 2, ZeroDetuningSign::FromAbove), std::domain_error);
}

TEST_CASE("exact coefficients reproduce independently computed references") {
    // References were evaluated with 200-digit arithmetic outside this code
    // base, then rounded to the nearest double.
    const SystemParams p = make(1.0, 0.7, 0.3);

    CHECK(kb::coeff_exact(p, 0, Branch::Minus) == doctest::Approx(-0.35).epsilon(1e-15));
    CHECK(rel_diff(kb::coeff_exact(p, 2, Branch::Minus), 0.021954445729288731) < 1e-13);
    CHECK(rel_diff(kb::coeff_exact(p, 5, Branch::Minus), -0.003394457552682391) < 1e-13);
    CHECK(rel_diff(kb::coeff_exact(p, 2, Branch::Plus), -0.012524572828272245) < 1e-13);

    // Deep-cancellation reference: the resonant k = 200 sum loses ~200 digits
    // to cancellation, so surviving this comparison requires the big-float
    // escalation to have actually engaged.
    const kb::CoeffValue far = kb::coeff_resonant_info(1.0, 200, ZeroDetuningSign::FromAbove);
    CHECK(rel_diff(far.value, 0.2364994361286611) < 1e-12);
    CHECK(far.precision_bits > 53);
}

TEST_CASE("coefficient tables agree with the per-k evaluations") {
    const SystemParams p = make(1.0, -1.9, 1.2);
    const kb::CoefficientTable table = kb::coefficient_table(p, 10, Branch::Minus);
    REQUIRE(table.values.size() == 11);
    for (int k = 0; k <= 10; ++k)
        CHECK(table.values[static_cast<size_t>(k)] == kb::coeff_exact(p, k, Branch::Minus));
}

TEST_CASE("closed form and ladder finite differences agree on random draws") {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> mag(0.05, 10.0);
    std::uniform_real_distribution<double> g_dist(0.05, 5.0);
    std::uniform_int_distribution<int> k_dist(1, 30);
    std::bernoulli_distribution flip(0.5);

    for (int i = 0; i < 40; ++i) {
        const double delta = (flip(rng) ? 1.0 : -1.0) * mag(rng);
        const SystemParams p = make(1.0, delta, g_dist(rng));
        const int k = k_dist(rng);
        const Branch branch = flip(rng) ? Branch::Minus : Branch::Plus;

        const double closed = kb::coeff_exact(p, k, branch);
        const double differenced = kb::coeff_forward_difference(p, k, branch);
        INFO("delta=", delta, " g=", p.g, " k=", k,
             " branch=", branch == Branch::Minus ? "-" : "+");
        CHECK(rel_diff(closed, differenced) < 1e-9);
    }
}

TEST_CASE("ladder energies rebuild exactly from the k-body sum") {
    const SystemParams cases[] = {
        make(1.0, 2.3, 0.8),
        make(1.0, -1.2, 1.7),
        make(1.0, 0.0, 0.6),
        make(1000.0, 100.0, 1.0),
    };
    const int levels[] = {1, 2, 3, 4, 5, 6, 7, 8, 25, 40};

    for (const SystemParams& p : cases) {
        for (int n : levels) {
            for (Branch branch : {Branch::Minus, Branch::Plus}) {
                const double rebuilt = kb::ladder_energy_from_kbody(p, n, branch, n);
                const double direct = jcdress::eigenvalue(p, DressedLabel{n, branch})
                                      - (n - 0.5) * p.omega_c;
                INFO("omega_c=", p.omega_c, " delta=", p.delta, " n=", n);
                CHECK(rel_diff(rebuilt, direct) < 1e-10);

                // Terms past k = n_b carry an exactly zero binomial weight, so
                // widening the sum cannot move the result.
                const double widened = kb::ladder_energy_from_kbody(p, n, branch, n + 15);
                CHECK(rel_diff(rebuilt, widened) < 1e-13);
            }
        }
    }

    CHECK_THROWS_AS(kb::ladder_energy_from_kbody(cases[0], 5, Branch::Minus, 4),
                    std::invalid_argument);
}

TEST_CASE("dispersive expansion matches its leading orders and domain") {
    const double g = 1.0;
    const double lam = 0.1;

    CHECK(rel_diff(kb::coeff_dispersive(g, lam, 1), -lam * g) < 1e-14);
    CHECK(rel_diff(kb::coeff_dispersive(g, lam, 2), 2.0 * lam * lam * lam * g) < 1e-14);
    CHECK(rel_diff(kb::coeff_dispersive(g, lam, 3), -12.0 * std::pow(lam, 5) * g) < 1e-14);

    // Successive orders shrink by (2 lambda)^2 times a k-dependent rational.
    const double r21 = kb::coeff_dispersive(g, lam, 2) / kb::coeff_dispersive(g, lam, 1);
    CHECK(rel_diff(r21, -2.0 * lam * lam) < 1e-14);

    // Far-detuned agreement with the exact kernel, k = 1..3 at lambda = 1e-3.
    const SystemParams p = jcdress::params_from_lambda(1000.0, 1.0, 1e-3);
    for (int k = 1; k <= 3; ++k) {
        CHECK(rel_diff(kb::coeff_exact(p, k, Branch::Minus),
                       kb::coeff_dispersive(1.0, 1e-3, k)) < 1e-4);
    }

    CHECK_THROWS_AS(kb::coeff_dispersive(g, 0.5, 1), std::domain_error);
    CHECK_THROWS_AS(kb::coeff_dispersive(g, 0.0, 1), std::domain_error);
    CHECK_THROWS_AS(kb::coeff_dispersive(g, -0.1, 2), std::domain_error);
    CHECK_THROWS_AS(kb::coeff_dispersive(g, 0.3, 0), std::domain_error);
}

TEST_CASE("resonant minus coefficients alternate and approach the asymptote") {
    double previous = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double c = kb::coeff_resonant(1.0, k, ZeroDetuningSign::FromAbove);
        const double expected_sign = (k % 2 == 0) ? 1.0 : -1.0;
        INFO("k=", k);
        CHECK(c * expected_sign > 0.0);
        if (k >= 2) CHECK(std::fabs(c) <= std::fabs(previous) + 1e-15);
        previous = c;
    }

    for (int k : {50, 100, 200}) {
        const double c = kb::coeff_resonant(1.0, k, ZeroDetuningSign::FromAbove);
        const double ratio = std::fabs(c) / kb::asymptotic_resonant_magnitude(1.0, k);
        INFO("k=", k, " ratio=", ratio);
        CHECK(std::fabs(ratio - 1.0) < 0.1);
    }

    // Alternation also holds off resonance on the minus branch at delta > 0.
    const kb::CoefficientTable table = kb::coefficient_table(make(1.0, 0.6, 0.9), 60, Branch::Minus);
    for (int k = 1; k <= 60; ++k) {
        const double expected_sign = (k % 2 == 0) ? 1.0 : -1.0;
        CHECK(table.values[static_cast<size_t>(k)] * expected_sign > 0.0);
    }
}

TEST_CASE("effective on-site parameters reproduce the low ladder exactly") {
    const SystemParams cases[] = {
        make(1.0, 1.3, 0.5),
        make(1.0, -2.2, 1.1),
        make(1000.0, 100.0, 1.0),
    };

    for (const SystemParams& p : cases) {
        const kb::EffectiveOnSite lo = kb::effective_onsite_n2(p, Branch::Minus);
        const kb::EffectiveOnSite hi = kb::effective_onsite_n2(p, Branch::Plus);

        CHECK(rel_diff(lo.e0, -0.5 * p.omega_a()) < 1e-14);
        CHECK(rel_diff(hi.e0, jcdress::eigenvalue(p, DressedLabel{1, Branch::Plus})) < 1e-14);

        // Filling the site reproduces the dressed ladder with no truncation
        // error: two bosons only ever see C_0..C_2.
        CHECK(rel_diff(lo.e0 + lo.omega_eff,
                       jcdress::eigenvalue(p, DressedLabel{1, Branch::Minus})) < 1e-12);
        CHECK(rel_diff(lo.e0 + 2.0 * lo.omega_eff + lo.u_eff,
                       jcdress::eigenvalue(p, DressedLabel{2, Branch::Minus})) < 1e-12);
        CHECK(rel_diff(hi.e0 + hi.omega_eff,
                       jcdress::eigenvalue(p, DressedLabel{2, Branch::Plus})) < 1e-12);
        CHECK(rel_diff(hi.e0 + 2.0 * hi.omega_eff + hi.u_eff,
                       jcdress::eigenvalue(p, DressedLabel{3, Branch::Plus})) < 1e-12);

        const std::pair<double, double> extra = kb::effective_hamiltonian_n3_terms(p);
        CHECK(extra.first == kb::coeff_exact(p, 3, Branch::Minus));
        CHECK(extra.second == kb::coeff_exact(p, 2, Branch::Plus));
    }
}

TEST_CASE("coefficients vanish with the coupling and flip with the detuning") {
    const SystemParams uncoupled = make(1.0, 1.4, 0.0);
    CHECK(kb::coeff_exact(uncoupled, 0, Branch::Minus) == -uncoupled.delta / 2.0);
    for (int k = 1; k <= 8; ++k) {
        CHECK(kb::coeff_exact(uncoupled, k, Branch::Minus) == 0.0);
        CHECK(kb::coeff_exact(uncoupled, k, Branch::Plus) == 0.0);
    }

    const SystemParams pos = make(1.0, 2.1, 0.7);
    const SystemParams neg = make(1.0, -2.1, 0.7);
    for (int k = 0; k <= 6; ++k) {
        for (Branch branch : {Branch::Minus, Branch::Plus}) {
            CHECK(kb::coeff_exact(neg, k, branch) == -kb::coeff_exact(pos, k, branch));
        }
    }
}

TEST_CASE("the environment precision floor is honored") {
    // This test mutates the process environment; it restores it before
    // returning so ordering against the other cases does not matter.
    setenv("JCDRESS_PRECISION_BITS", "777", 1);
    CHECK(jcdress::mp::env_precision_floor() == 777);
    const kb::CoeffValue v = kb::coeff_exact_info(make(1.0, 0.7, 0.3), 30, Branch::Minus);
    CHECK(v.precision_bits >= 777);

    setenv("JCDRESS_PRECISION_BITS", "garbage", 1);
    CHECK(jcdress::mp::env_precision_floor() == 0);
    setenv("JCDRESS_PRECISION_BITS", "-5", 1);
    CHECK(jcdress::mp::env_precision_floor() == 0);

    unsetenv("JCDRESS_PRECISION_BITS");
    CHECK(jcdress::mp::env_precision_floor() == 0);
}

// Brute-force oracle tests: basis bookkeeping, bare matrix elements, the
// manifold-rotation unitary, and agreement of both spectrum routes with the
// closed-form ladder.

#include "doctest.h"

#include <cmath>
#include <random>

#include "jcdress/dressed.hpp"
#include "jcdress/oracle.hpp"
#include "jcdress/params.hpp"

using jcdress::Branch;
using jcdress::DressedLabel;
using jcdress::SystemParams;
namespace oc = jcdress::oracle;

namespace {

SystemParams make(double omega_c, double delta, double g) {
    SystemParams p;
    p.omega_c = omega_c;
    p.delta = delta;
    p.g = g;
    return p;
}

double rel_diff(double a, double b) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    if (scale == 0.0) return 0.0;
    return std::fabs(a - b) / scale;
}

} // namespace

TEST_CASE("basis enumeration groups manifolds with photons descending") {
    const oc::FockTlsBasis b(4);
    CHECK(b.dim() == 9);

    // |0,g>, |1,g>, |0,e>, |2,g>, |1,e>, |3,g>, |2,e>, |4,g>, |3,e>
    const int photons[] = {0, 1, 0, 2, 1, 3, 2, 4, 3};
    const bool excited[] = {false, false, true, false, true, false, true, false, true};
    for (int i = 0; i < b.dim(); ++i) {
        const oc::FockTlsBasis::State s = b.state_at(i);
        CHECK(s.photons == photons[i]);
        CHECK(s.excited == excited[i]);
        CHECK(s.manifold() == (i + 1) / 2);
        CHECK(b.index(s.photons, s.excited) == i);
    }

    CHECK(b.manifold_offset(0) == 0);
    CHECK(b.manifold_offset(1) == 1);
    CHECK(b.manifold_offset(3) == 5);
    CHECK(b.manifold_dim(0) == 1);
    CHECK(b.manifold_dim(2) == 2);

    CHECK_THROWS_AS(b.state_at(9), std::out_of_range);
    CHECK_THROWS_AS(b.state_at(-1), std::out_of_range);
    CHECK_THROWS_AS(b.index(4, true), std::out_of_range);
    CHECK_THROWS_AS(oc::FockTlsBasis(0), std::domain_error);
}

TEST_CASE("bare hamiltonian carries the expected matrix elements") {
    const SystemParams p = make(1.0, 0.7, 0.3);
    const int n_max = 6;
    const oc::OperatorMatrix h = oc::build_bare_hamiltonian(p, n_max);
    REQUIRE(h.dim() == 13);

    CHECK(h.mat(0, 0) == doctest::Approx(-0.5 * p.omega_a()).epsilon(1e-15));
    for (int n = 1; n <= n_max; ++n) {
        const int ig = 2 * n - 1; // |n, g>
        const int ie = 2 * n;     // |n-1, e>
        CHECK(h.mat(ig, ig) == doctest::Approx(n * p.omega_c - 0.5 * p.omega_a()).epsilon(1e-15));
        CHECK(h.mat(ie, ie)
              == doctest::Approx((n - 1) * p.omega_c + 0.5 * p.omega_a()).epsilon(1e-15));
        CHECK(h.mat(ig, ie) == doctest::Approx(p.g * std::sqrt(double(n))).epsilon(1e-15));
    }

    CHECK(h.hermiticity_residual() == 0.0);
    REQUIRE(h.block_offsets.size() == static_cast<size_t>(n_max) + 1);
    CHECK(h.block_offsets[0] == 0);
    CHECK(h.block_offsets[1] == 1);
    CHECK(h.block_offsets[4] == 7);

    // Nothing couples distinct manifolds.
    const oc::FockTlsBasis b(n_max);
    for (int i = 0; i < h.dim(); ++i)
        for (int j = 0; j < h.dim(); ++j)
            if (b.state_at(i).manifold() != b.state_at(j).manifold())
                CHECK(h.mat(i, j) == 0.0);
}

TEST_CASE("manifold rotation diagonalizes the bare hamiltonian") {
    std::mt19937 rng(2025);
    std::uniform_real_distribution<double> delta_dist(-10.0, 10.0);
    std::uniform_real_distribution<double> g_dist(0.0, 5.0);
    const int n_max = 25;

    for (int i = 0; i < 20; ++i) {
        const SystemParams p = make(1.0, delta_dist(rng), g_dist(rng));
        const oc::OperatorMatrix u = oc::build_unitary(p, n_max);
        CHECK(u.unitarity_residual() <= 1e-12);

        const oc::OperatorMatrix h = oc::build_bare_hamiltonian(p, n_max);
        const double scale = h.mat.cwiseAbs().maxCoeff();
        CHECK(oc::verify_diagonalization(p, n_max) <= 1e-10 * scale);
    }

    // The rotated diagonal lands branch-sorted: minus in the |n,g> slot.
    const SystemParams p = make(1.0, -1.7, 0.9);
    const oc::OperatorMatrix h = oc::build_bare_hamiltonian(p, 8);
    const oc::OperatorMatrix u = oc::build_unitary(p, 8);
    const Eigen::MatrixXd rotated = u.mat.transpose() * h.mat * u.mat;
    CHECK(rel_diff(rotated(0, 0), -0.5 * p.omega_a()) < 1e-14);
    for (int n = 1; n <= 8; ++n) {
        CHECK(rel_diff(rotated(2 * n - 1, 2 * n - 1),
                       jcdress::eigenvalue(p, DressedLabel{n, Branch::Minus})) < 1e-12);
        CHECK(rel_diff(rotated(2 * n, 2 * n),
                       jcdress::eigenvalue(p, DressedLabel{n, Branch::Plus})) < 1e-12);
    }
}

TEST_CASE("block and dense spectra agree with the closed form") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> delta_dist(-10.0, 10.0);
    std::uniform_real_distribution<double> g_dist(0.05, 5.0);
    const int n_max = 12;

    for (int i = 0; i < 30; ++i) {
        const SystemParams p = make(1.0, delta_dist(rng), g_dist(rng));
        const auto block = oc::spectrum(p, n_max, oc::SpectrumMethod::Block);
        const auto dense = oc::spectrum(p, n_max, oc::SpectrumMethod::Dense);
        REQUIRE(block.size() == static_cast<size_t>(2 * n_max + 1));
        REQUIRE(dense.size() == block.size());

        int ground_entries = 0;
        for (size_t j = 0; j < block.size(); ++j) {
            if (j > 0) CHECK(block[j].energy >= block[j - 1].energy);
            CHECK(block[j].n == dense[j].n);
            if (block[j].n == 0) {
                ++ground_entries;
                CHECK(rel_diff(block[j].energy, -0.5 * p.omega_a()) < 1e-10);
            } else {
                CHECK(block[j].branch == dense[j].branch);
                const double closed =
                    jcdress::eigenvalue(p, DressedLabel{block[j].n, block[j].branch});
                CHECK(rel_diff(block[j].energy, closed) < 1e-10);
            }
            CHECK(rel_diff(block[j].energy, dense[j].energy) < 1e-10);
        }
        CHECK(ground_entries == 1);
    }

    // Decoupled limit: the spectrum is the bare one and labeling still works.
    const SystemParams p0 = make(1.0, 1.5, 0.0);
    for (const auto method : {oc::SpectrumMethod::Block, oc::SpectrumMethod::Dense}) {
        const auto spec = oc::spectrum(p0, 5, method);
        for (const auto& level : spec) {
            const double closed = level.n == 0
                ? -0.5 * p0.omega_a()
                : jcdress::eigenvalue(p0, DressedLabel{level.n, level.branch});
            CHECK(rel_diff(level.energy, closed) < 1e-12);
        }
    }
}

TEST_CASE("verify passes and populates its residuals") {
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> delta_dist(-8.0, 8.0);
    std::uniform_real_distribution<double> g_dist(0.1, 4.0);

    for (int i = 0; i < 10; ++i) {
        const SystemParams p = make(1.0, delta_dist(rng), g_dist(rng));
        const oc::VerifyReport report = oc::verify(p, 15);
        CHECK(report.pass);
        CHECK(report.n_max == 15);
        CHECK(report.hermiticity_residual <= 1e-12);
        CHECK(report.unitarity_residual <= 1e-12);
        CHECK(report.offdiag_residual <= report.offdiag_bound);
        CHECK(report.offdiag_bound == doctest::Approx(1e-10 * report.max_abs_energy));
        CHECK(report.spectrum_rel_err_block <= 1e-10);
        CHECK(report.spectrum_rel_err_dense <= 1e-10);
    }
}

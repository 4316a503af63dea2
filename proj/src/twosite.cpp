// twosite.cpp - exact and dispersive two-site JCH machinery on fixed-n_tot sectors

#include "jcdress/twosite.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "jcdress/dressed.hpp"
#include "jcdress/kbody.hpp"

namespace jcdress::jch2 {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

constexpr std::array<std::pair<Branch, Branch>, 4> kBranchSectors{{
    {Branch::Minus, Branch::Minus},
    {Branch::Plus, Branch::Minus},
    {Branch::Minus, Branch::Plus},
    {Branch::Plus, Branch::Plus},
}};

// <m, s | p, a> for one site; nonzero only when both labels sit in the same
// bare manifold m + [s = +] = p + [a = e].
double site_overlap(const SystemParams& site, int m, Branch s, int p, bool excited) {
    const int n_dressed = m + (s == Branch::Plus ? 1 : 0);
    const int n_bare = p + (excited ? 1 : 0);
    if (n_dressed != n_bare) return 0.0;
    if (n_dressed == 0) return 1.0;
    const auto cs = eigenvector_coeffs(site, n_dressed);
    if (s == Branch::Minus) return excited ? -cs.s : cs.c;
    return excited ? cs.c : cs.s;
}

} // namespace

std::vector<TwoSiteBasisState> dressed_sector_basis(int n_tot) {
    if (n_tot < 0) throw std::invalid_argument("dressed_sector_basis: n_tot must be >= 0");
    std::vector<TwoSiteBasisState> basis;
    for (const auto& [s1, s2] : kBranchSectors) {
        const int bosons =
            n_tot - (s1 == Branch::Plus ? 1 : 0) - (s2 == Branch::Plus ? 1 : 0);
        if (bosons < 0) continue;
        for (int lo = 0; 2 * lo <= bosons; ++lo) {
            basis.push_back({bosons - lo, lo, s1, s2});
            if (bosons - lo != lo) basis.push_back({lo, bosons - lo, s1, s2});
        }
    }
    return basis;
}

std::vector<BareTwoSiteState> bare_sector_basis(int n_tot) {
    std::vector<BareTwoSiteState> basis;
    for (const auto& d : dressed_sector_basis(n_tot)) {
        basis.push_back({d.m1, d.s1 == Branch::Plus, d.m2, d.s2 == Branch::Plus});
    }
    return basis;
}

oracle::OperatorMatrix build_bare_jch(const TwoSiteParams& params, int n_tot) {
    params.validate();
    const auto basis = bare_sector_basis(n_tot);
    const auto& site = params.site;
    const int dim = static_cast<int>(basis.size());

    std::map<std::tuple<int, bool, int, bool>, int> index;
    for (int j = 0; j < dim; ++j) {
        index.emplace(std::make_tuple(basis[j].p1, basis[j].e1, basis[j].p2, basis[j].e2), j);
    }
    auto at = [&](int p1, bool e1, int p2, bool e2) {
        const auto it = index.find(std::make_tuple(p1, e1, p2, e2));
        if (it == index.end()) throw std::logic_error("build_bare_jch: image left the sector");
        return it->second;
    };

    const double half_omega_a = 0.5 * site.omega_a();
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        const auto& b = basis[j];
        mat(j, j) = site.omega_c * (b.p1 + b.p2) +
                    half_omega_a * ((b.e1 ? 1 : -1) + (b.e2 ? 1 : -1));

        // per-site JC exchange g (a^dag sigma^- + a sigma^+)
        if (b.e1) {
            mat(at(b.p1 + 1, false, b.p2, b.e2), j) += site.g * std::sqrt(b.p1 + 1.0);
        } else if (b.p1 > 0) {
            mat(at(b.p1 - 1, true, b.p2, b.e2), j) += site.g * std::sqrt(double(b.p1));
        }
        if (b.e2) {
            mat(at(b.p1, b.e1, b.p2 + 1, false), j) += site.g * std::sqrt(b.p2 + 1.0);
        } else if (b.p2 > 0) {
            mat(at(b.p1, b.e1, b.p2 - 1, true), j) += site.g * std::sqrt(double(b.p2));
        }

        // photon hopping J (a1^dag a2 + a1 a2^dag)
        if (b.p2 > 0) {
            mat(at(b.p1 + 1, b.e1, b.p2 - 1, b.e2), j) +=
                params.hop_j * std::sqrt((b.p1 + 1.0) * b.p2);
        }
        if (b.p1 > 0) {
            mat(at(b.p1 - 1, b.e1, b.p2 + 1, b.e2), j) +=
                params.hop_j * std::sqrt(b.p1 * (b.p2 + 1.0));
        }
    }

    oracle::OperatorMatrix out;
    out.mat = std::move(mat);
    out.block_offsets = {0};
    out.basis = "bare_two_site_sector";
    return out;
}

Eigen::MatrixXd transform_matrix(const TwoSiteParams& params, int n_tot) {
    params.validate();
    const auto dressed = dressed_sector_basis(n_tot);
    const auto bare = bare_sector_basis(n_tot);
    const int dim = static_cast<int>(dressed.size());

    Eigen::MatrixXd t(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            t(i, j) = site_overlap(params.site, dressed[i].m1, dressed[i].s1,
                                   bare[j].p1, bare[j].e1) *
                      site_overlap(params.site, dressed[i].m2, dressed[i].s2,
                                   bare[j].p2, bare[j].e2);
        }
    }
    return t;
}

oracle::OperatorMatrix dressed_transform_two_site(const TwoSiteParams& params, int n_tot) {
    const auto bare = build_bare_jch(params, n_tot);
    const Eigen::MatrixXd t = transform_matrix(params, n_tot);

    oracle::OperatorMatrix out;
    out.mat = t * bare.mat * t.transpose();
    out.block_offsets = {0};
    out.basis = "dressed_two_site_sector";
    return out;
}

double j_eff(const TwoSiteParams& params, int manifold) {
    params.validate();
    const auto cs1 = eigenvector_coeffs(params.site, 1);
    if (manifold == 1) return params.hop_j * cs1.c * cs1.c;
    if (manifold == 2) {
        const auto cs2 = eigenvector_coeffs(params.site, 2);
        return params.hop_j * cs1.c * (cs1.c * cs2.c + cs1.s * cs2.s / kSqrt2);
    }
    throw std::invalid_argument("j_eff: manifold must be 1 or 2");
}

Outcoupling outcoupling(const TwoSiteParams& params) {
    params.validate();
    const auto cs1 = eigenvector_coeffs(params.site, 1);
    const auto cs2 = eigenvector_coeffs(params.site, 2);
    const double j = params.hop_j;
    Outcoupling out;
    out.m1 = j * cs1.c * cs1.s;
    out.m2 = j * cs1.s * (kSqrt2 * cs1.c * cs2.c + cs1.s * cs2.s);
    out.m3 = j * cs1.c * (kSqrt2 * cs1.c * cs2.s - cs1.s * cs2.c);
    out.k1 = j * cs1.c * (kSqrt2 * cs1.s * cs2.c - cs1.c * cs2.s);
    out.k2 = j * cs1.s * (kSqrt2 * cs1.s * cs2.c - cs1.c * cs2.s);
    return out;
}

std::pair<Eigen::Matrix2d, Eigen::Matrix3d> hbar_blocks(const TwoSiteParams& params) {
    params.validate();
    const auto eff = kbody::effective_onsite_n2(params.site, Branch::Minus);
    const double omega0 = eff.omega_eff;
    const double u = eff.u_eff;
    const double j1 = j_eff(params, 1);
    const double j2 = kSqrt2 * j_eff(params, 2);

    Eigen::Matrix2d one;
    one << omega0, j1,
           j1, omega0;
    Eigen::Matrix3d two;
    two << 2.0 * omega0 + u, 0.0, j2,
           0.0, 2.0 * omega0 + u, j2,
           j2, j2, 2.0 * omega0;
    return {one, two};
}

std::pair<Eigen::Matrix2d, Eigen::Matrix3d> bose_hubbard_blocks(const BoseHubbardParams& params) {
    const double j2 = kSqrt2 * params.j;
    Eigen::Matrix2d one;
    one << -params.mu, params.j,
           params.j, -params.mu;
    Eigen::Matrix3d two;
    two << -2.0 * params.mu + params.u, 0.0, j2,
           0.0, -2.0 * params.mu + params.u, j2,
           j2, j2, -2.0 * params.mu;
    return {one, two};
}

GroundStateReport ground_state(const TwoSiteParams& params) {
    params.validate();
    const auto basis = dressed_sector_basis(2);
    const auto hd = dressed_transform_two_site(params, 2);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hd.mat);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("ground_state: eigensolver did not converge");
    }
    const auto& evals = solver.eigenvalues();
    Eigen::VectorXd v = solver.eigenvectors().col(0);
    int peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    if (v(peak) < 0.0) v = -v; // fix the overall sign so reports are reproducible

    GroundStateReport rep;
    rep.energy = evals(0);
    rep.near_degenerate = (evals(1) - evals(0)) < 1e-10;
    rep.amplitudes.assign(v.data(), v.data() + v.size());

    double mean = 0.0;
    double mean_sq = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        const double w = v(i) * v(i);
        const double n1 = basis[i].n_site1();
        mean += w * n1;
        mean_sq += w * n1 * n1;
    }
    rep.variance = mean_sq - mean * mean;

    // ideal dressed states live in the (-,-) subspace, indices 0..2:
    // MI = |1,1,-,->, SF = (|2,0,-,-> + |0,2,-,->)/2 - |1,1,-,->/sqrt(2)
    rep.overlap_dressed_mi = v(2) * v(2);
    const double sf_amp = 0.5 * v(0) + 0.5 * v(1) - v(2) / kSqrt2;
    rep.overlap_dressed_sf = sf_amp * sf_amp;

    // photonic ideal states are the bare analogues carried through T
    const Eigen::MatrixXd t = transform_matrix(params, 2);
    const Eigen::VectorXd photon_mi = t.col(2);
    const Eigen::VectorXd photon_sf = 0.5 * t.col(0) + 0.5 * t.col(1) - t.col(2) / kSqrt2;
    rep.overlap_photonic_mi = std::pow(v.dot(photon_mi), 2);
    rep.overlap_photonic_sf = std::pow(v.dot(photon_sf), 2);

    const double u_eff = kbody::coeff_exact(params.site, 2, Branch::Minus);
    const double j2 = j_eff(params, 2);
    if (u_eff == 0.0) {
        rep.effective_ratio = (j2 == 0.0) ? std::numeric_limits<double>::quiet_NaN()
                                          : std::numeric_limits<double>::infinity();
    } else {
        rep.effective_ratio = j2 / u_eff;
    }
    return rep;
}

oracle::OperatorMatrix dispersive_hamiltonian(const TwoSiteParams& params, int n_tot,
                                              bool* warned_outside_regime) {
    params.validate();
    const double lambda = params.site.lambda(); // rejects delta == 0
    if (warned_outside_regime) *warned_outside_regime = std::abs(lambda) > 0.1;

    const auto basis = dressed_sector_basis(n_tot);
    const int dim = static_cast<int>(basis.size());
    const auto minus = kbody::effective_onsite_n2(params.site, Branch::Minus);
    const auto plus = kbody::effective_onsite_n2(params.site, Branch::Plus);
    auto onsite = [&](Branch s) -> const kbody::EffectiveOnSite& {
        return s == Branch::Minus ? minus : plus;
    };

    std::map<std::tuple<int, int, int, int>, int> index;
    for (int j = 0; j < dim; ++j) {
        index.emplace(std::make_tuple(basis[j].m1, basis[j].m2,
                                      basis[j].s1 == Branch::Plus,
                                      basis[j].s2 == Branch::Plus),
                      j);
    }
    auto at = [&](int m1, int m2, Branch s1, Branch s2) {
        const auto it = index.find(std::make_tuple(m1, m2, s1 == Branch::Plus,
                                                   s2 == Branch::Plus));
        if (it == index.end()) throw std::logic_error("dispersive_hamiltonian: image left the sector");
        return it->second;
    };

    const double j = params.hop_j;
    const double jl = j * lambda;
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
        const auto& b = basis[col];
        const auto& o1 = onsite(b.s1);
        const auto& o2 = onsite(b.s2);
        mat(col, col) = o1.omega_eff * b.m1 + 0.5 * o1.u_eff * b.m1 * (b.m1 - 1.0) +
                        o2.omega_eff * b.m2 + 0.5 * o2.u_eff * b.m2 * (b.m2 - 1.0) +
                        o1.e0 + o2.e0;

        // dressed-boson hopping within each branch sector
        if (b.m2 > 0) {
            mat(at(b.m1 + 1, b.m2 - 1, b.s1, b.s2), col) += j * std::sqrt((b.m1 + 1.0) * b.m2);
        }
        if (b.m1 > 0) {
            mat(at(b.m1 - 1, b.m2 + 1, b.s1, b.s2), col) += j * std::sqrt(b.m1 * (b.m2 + 1.0));
        }

        // leading cross-site boson-TLS exchange, strength J*lambda
        if (b.s2 == Branch::Plus) {
            mat(at(b.m1 + 1, b.m2, b.s1, Branch::Minus), col) += jl * std::sqrt(b.m1 + 1.0);
        }
        if (b.s2 == Branch::Minus && b.m1 > 0) {
            mat(at(b.m1 - 1, b.m2, b.s1, Branch::Plus), col) += jl * std::sqrt(double(b.m1));
        }
        if (b.s1 == Branch::Plus) {
            mat(at(b.m1, b.m2 + 1, Branch::Minus, b.s2), col) += jl * std::sqrt(b.m2 + 1.0);
        }
        if (b.s1 == Branch::Minus && b.m2 > 0) {
            mat(at(b.m1, b.m2 - 1, Branch::Plus, b.s2), col) += jl * std::sqrt(double(b.m2));
        }
    }

    oracle::OperatorMatrix out;
    out.mat = std::move(mat);
    out.block_offsets = {0};
    out.basis = "dressed_two_site_sector";
    return out;
}

} // namespace jcdress::jch2

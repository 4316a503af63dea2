// twosite.hpp - two-site Jaynes-Cummings-Hubbard: sector bases, transforms, diagnostics

#pragma once

#include <utility>
#include <vector>

#include "jcdress/oracle.hpp"

namespace jcdress::jch2 {

struct TwoSiteParams {
    SystemParams site; // both sites share these parameters
    double hop_j{0.0}; // photonic hopping J >= 0

    void validate() const {
        site.validate();
        if (!(hop_j >= 0.0)) throw std::domain_error("TwoSiteParams: hop_j must be >= 0");
    }
};

// Dressed two-site label |m1, m2, s1, s2>: m_i counts dressed bosons at site i,
// so the site's bare manifold is m_i plus one when s_i is the upper branch.
struct TwoSiteBasisState {
    int m1{0};
    int m2{0};
    Branch s1{Branch::Minus};
    Branch s2{Branch::Minus};

    int n_tot() const {
        return m1 + m2 + (s1 == Branch::Plus ? 1 : 0) + (s2 == Branch::Plus ? 1 : 0);
    }
    // total excitations at site 1, the variance observable
    int n_site1() const { return m1 + (s1 == Branch::Plus ? 1 : 0); }
};

struct BareTwoSiteState {
    int p1{0};
    bool e1{false};
    int p2{0};
    bool e2{false};

    int n_tot() const { return p1 + p2 + (e1 ? 1 : 0) + (e2 ? 1 : 0); }
};

// Fixed enumeration of the n_tot sector: branch sectors in the order
// (-,-), (+,-), (-,+), (+,+); within a sector, boson pairs ordered by
// min(m1,m2) ascending, then m1 descending. For n_tot = 2 this yields
// {20--, 02--, 11--, 10+-, 01+-, 10-+, 01-+, 00++}.
std::vector<TwoSiteBasisState> dressed_sector_basis(int n_tot);

// Bare enumeration index-aligned with the dressed one through m -> p, s -> e,
// so the two bases coincide literally at g = 0.
std::vector<BareTwoSiteState> bare_sector_basis(int n_tot);

// Bare JCH on the fixed-n_tot sector: two JC sites plus J (a1^dag a2 + a1 a2^dag).
oracle::OperatorMatrix build_bare_jch(const TwoSiteParams& params, int n_tot);

// Orthogonal basis-change matrix T with T(i,j) = <dressed_i | bare_j>, the
// product of per-site eigenvector coefficients.
Eigen::MatrixXd transform_matrix(const TwoSiteParams& params, int n_tot);

// T H_bare T^T: the exact two-site Hamiltonian in the dressed basis. On-site
// parts are diagonal; every off-diagonal element comes from the hopping.
oracle::OperatorMatrix dressed_transform_two_site(const TwoSiteParams& params, int n_tot);

// J_eff^(1) = J cos^2(theta_1);
// J_eff^(2) = J cos(theta_1) [cos(theta_1)cos(theta_2) + sin(theta_1)sin(theta_2)/sqrt(2)].
double j_eff(const TwoSiteParams& params, int manifold);

// The five inter-branch transition amplitudes out of the (-,-) subspace.
struct Outcoupling {
    double m1{0.0};
    double m2{0.0};
    double m3{0.0};
    double k1{0.0};
    double k2{0.0};
};

Outcoupling outcoupling(const TwoSiteParams& params);

// The displayed n = 1 and n = 2 blocks of the (-,-) projection, measured from
// the two-site vacuum energy. Ordering {|10>,|01>} and {|20>,|02>,|11>}.
std::pair<Eigen::Matrix2d, Eigen::Matrix3d> hbar_blocks(const TwoSiteParams& params);

struct BoseHubbardParams {
    double mu{0.0};
    double u{0.0};
    double j{0.0};
};

// The matching two-site Bose-Hubbard projections for comparison.
std::pair<Eigen::Matrix2d, Eigen::Matrix3d> bose_hubbard_blocks(const BoseHubbardParams& params);

struct GroundStateReport {
    double energy{0.0};
    std::vector<double> amplitudes;   // over dressed_sector_basis(2)
    double variance{0.0};             // var(N_1) = var(N_2) by site symmetry
    double overlap_dressed_mi{0.0};   // squared overlaps with the ideal states
    double overlap_photonic_mi{0.0};
    double overlap_dressed_sf{0.0};
    double overlap_photonic_sf{0.0};
    double effective_ratio{0.0};      // J_eff^(2) / U_eff
    bool near_degenerate{false};      // gap to the first excited state < 1e-10
};

// Two-particle ground state of the full 8-dimensional n_tot = 2 sector,
// including all four branch subspaces.
GroundStateReport ground_state(const TwoSiteParams& params);

// Dispersive-limit model: branch-projected Bose-Hubbard-form blocks, hopping J
// in every branch sector, and the four J*lambda cross-site boson-TLS terms.
// Intended for |lambda| <= 0.1; outside that regime *warned_outside_regime is
// set when provided. Requires delta != 0.
oracle::OperatorMatrix dispersive_hamiltonian(const TwoSiteParams& params, int n_tot,
                                              bool* warned_outside_regime = nullptr);

} // namespace jcdress::jch2

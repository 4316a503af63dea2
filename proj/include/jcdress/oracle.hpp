// oracle.hpp - brute-force Fock x TLS construction and diagonalization of the bare model

#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "jcdress/dressed.hpp"
#include "jcdress/params.hpp"

namespace jcdress::oracle {

// Truncated bare basis grouped by excitation manifold, photon number
// descending inside each manifold: |0,g>, |1,g>, |0,e>, |2,g>, |1,e>, ...
// Manifold n >= 1 holds (|n,g>, |n-1,e>); manifold 0 is the lone |0,g>.
struct FockTlsBasis {
    int n_max{1};

    explicit FockTlsBasis(int n_max_in) : n_max(n_max_in) {
        if (n_max < 1) throw std::domain_error("FockTlsBasis: n_max must be >= 1");
    }

    int dim() const { return 2 * n_max + 1; }

    struct State {
        int photons{0};
        bool excited{false};
        int manifold() const { return photons + (excited ? 1 : 0); }
    };

    int manifold_offset(int n) const { return n == 0 ? 0 : 2 * n - 1; }
    int manifold_dim(int n) const { return n == 0 ? 1 : 2; }

    State state_at(int i) const {
        if (i < 0 || i >= dim()) throw std::out_of_range("FockTlsBasis: index out of range");
        if (i == 0) return {0, false};
        const int n = (i + 1) / 2;
        const bool excited = (i % 2) == 0;
        return {excited ? n - 1 : n, excited};
    }

    int index(int photons, bool excited) const {
        const int n = photons + (excited ? 1 : 0);
        if (photons < 0 || n > n_max) throw std::out_of_range("FockTlsBasis: state outside truncation");
        if (n == 0) return 0;
        return manifold_offset(n) + (excited ? 1 : 0);
    }
};

// Dense real matrix plus the block layout of whatever basis produced it.
struct OperatorMatrix {
    Eigen::MatrixXd mat;
    std::vector<int> block_offsets; // start row of each conserved block
    std::string basis;              // tag describing basis/ordering, for reports

    int dim() const { return static_cast<int>(mat.rows()); }

    double hermiticity_residual() const { return (mat - mat.transpose()).cwiseAbs().maxCoeff(); }
    double unitarity_residual() const {
        const Eigen::MatrixXd e = mat.transpose() * mat
            - Eigen::MatrixXd::Identity(mat.rows(), mat.cols());
        return e.cwiseAbs().maxCoeff();
    }
    bool is_hermitian(double tol = 1e-12) const { return hermiticity_residual() <= tol; }
    bool is_unitary(double tol = 1e-12) const { return unitarity_residual() <= tol; }

    double max_offdiagonal() const {
        double m = 0.0;
        for (int i = 0; i < mat.rows(); ++i)
            for (int j = 0; j < mat.cols(); ++j)
                if (i != j) m = std::max(m, std::abs(mat(i, j)));
        return m;
    }
};

// H = omega_c a^dag a + (omega_a/2) sigma_z + g (a^dag sigma^- + a sigma^+),
// exactly block diagonal over manifolds on this basis.
OperatorMatrix build_bare_hamiltonian(const SystemParams& params, int n_max);

// e^S assembled manifold-by-manifold from the mixing angle; orthogonal, and
// U^T H U is diagonal with the minus-label energy in the |n,g> slot.
OperatorMatrix build_unitary(const SystemParams& params, int n_max);

// max_{i != j} |(U^T H U)_{ij}| over all manifolds <= n_max.
double verify_diagonalization(const SystemParams& params, int n_max);

enum class SpectrumMethod { Block, Dense };

struct LabeledEnergy {
    int n{0};
    Branch branch{Branch::Minus};
    double energy{0.0};
};

// Brute-force labeled spectrum, sorted by energy. Block solves each 2x2 by
// the quadratic formula; Dense diagonalizes the full matrix and recovers the
// manifold from eigenvector support. Equal in-manifold eigenvalues with g != 0
// are analytically impossible and raise a degenerate-labeling error.
std::vector<LabeledEnergy> spectrum(const SystemParams& params, int n_max,
                                    SpectrumMethod method = SpectrumMethod::Block);

struct VerifyReport {
    int n_max{0};
    double hermiticity_residual{0.0};
    double unitarity_residual{0.0};
    double offdiag_residual{0.0};
    double offdiag_bound{0.0};   // 1e-10 * max |E|
    double max_abs_energy{0.0};
    double spectrum_rel_err_block{0.0};
    double spectrum_rel_err_dense{0.0};
    bool pass{false};
};

// Runs every oracle cross-check at the given truncation.
VerifyReport verify(const SystemParams& params, int n_max);

} // namespace jcdress::oracle

#include "jcdress/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace jcdress::oracle {

OperatorMatrix build_bare_hamiltonian(const SystemParams& params, int n_max) {
    params.validate();
    const FockTlsBasis basis(n_max);
    OperatorMatrix op;
    op.basis = "fock_tls_by_manifold";
    op.mat = Eigen::MatrixXd::Zero(basis.dim(), basis.dim());
    for (int n = 0; n <= n_max; ++n) op.block_offsets.push_back(basis.manifold_offset(n));

    const double omega_a = params.omega_a();
    for (int i = 0; i < basis.dim(); ++i) {
        const auto st = basis.state_at(i);
        op.mat(i, i) = params.omega_c * st.photons + 0.5 * omega_a * (st.excited ? 1.0 : -1.0);
    }
    for (int n = 1; n <= n_max; ++n) {
        const int ig = basis.index(n, false);
        const int ie = basis.index(n - 1, true);
        const double coupling = params.g * std::sqrt(static_cast<double>(n));
        op.mat(ig, ie) = coupling;
        op.mat(ie, ig) = coupling;
    }
    return op;
}

OperatorMatrix build_unitary(const SystemParams& params, int n_max) {
    params.validate();
    const FockTlsBasis basis(n_max);
    OperatorMatrix op;
    op.basis = "fock_tls_by_manifold";
    op.mat = Eigen::MatrixXd::Identity(basis.dim(), basis.dim());
    for (int n = 0; n <= n_max; ++n) op.block_offsets.push_back(basis.manifold_offset(n));

    for (int n = 1; n <= n_max; ++n) {
        const CosSin cs = eigenvector_coeffs(params, n);
        const int ig = basis.index(n, false);
        const int ie = basis.index(n - 1, true);
        op.mat(ig, ig) = cs.c;
        op.mat(ig, ie) = cs.s;
        op.mat(ie, ig) = -cs.s;
        op.mat(ie, ie) = cs.c;
    }
    return op;
}

double verify_diagonalization(const SystemParams& params, int n_max) {
    const OperatorMatrix h = build_bare_hamiltonian(params, n_max);
    const OperatorMatrix u = build_unitary(params, n_max);
    const Eigen::MatrixXd d = u.mat.transpose() * h.mat * u.mat;
    OperatorMatrix diag;
    diag.mat = d;
    return diag.max_offdiagonal();
}

namespace {

std::vector<LabeledEnergy> spectrum_block(const SystemParams& params, int n_max) {
    const OperatorMatrix h = build_bare_hamiltonian(params, n_max);
    const FockTlsBasis basis(n_max);
    const double sign = params.sign_eff();
    std::vector<LabeledEnergy> out;
    out.push_back({0, Branch::Minus, h.mat(0, 0)});
    for (int n = 1; n <= n_max; ++n) {
        const int ig = basis.index(n, false);
        const int ie = basis.index(n - 1, true);
        const double mean = 0.5 * (h.mat(ig, ig) + h.mat(ie, ie));
        const double half_gap = 0.5 * (h.mat(ie, ie) - h.mat(ig, ig));
        const double r = std::hypot(half_gap, h.mat(ig, ie));
        out.push_back({n, Branch::Minus, mean - sign * r});
        out.push_back({n, Branch::Plus, mean + sign * r});
    }
    return out;
}

std::vector<LabeledEnergy> spectrum_dense(const SystemParams& params, int n_max) {
    const OperatorMatrix h = build_bare_hamiltonian(params, n_max);
    const FockTlsBasis basis(n_max);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.mat);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("spectrum: dense eigensolver failed");

    // bucket eigenpairs by the manifold their eigenvector lives in
    std::vector<std::vector<std::pair<double, int>>> per_manifold(n_max + 1);
    for (int idx = 0; idx < h.dim(); ++idx) {
        const Eigen::VectorXd v = solver.eigenvectors().col(idx);
        int support = 0;
        v.cwiseAbs().maxCoeff(&support);
        const int n = basis.state_at(support).manifold();
        per_manifold[n].push_back({solver.eigenvalues()(idx), support});
    }

    const double sign = params.sign_eff();
    std::vector<LabeledEnergy> out;
    for (int n = 0; n <= n_max; ++n) {
        auto& found = per_manifold[n];
        if (static_cast<int>(found.size()) != basis.manifold_dim(n))
            throw std::domain_error("spectrum: eigenvector support does not respect manifold blocks");
        if (n == 0) {
            out.push_back({0, Branch::Minus, found[0].first});
            continue;
        }
        std::sort(found.begin(), found.end());
        if (params.g == 0.0) {
            // uncoupled: label by the basis state each eigenvector sits on
            for (const auto& [energy, support] : found) {
                const Branch b = basis.state_at(support).excited ? Branch::Plus : Branch::Minus;
                out.push_back({n, b, energy});
            }
            continue;
        }
        if (found[0].first == found[1].first)
            throw std::domain_error("spectrum: degenerate in-manifold eigenvalues with g != 0 "
                                    "(numerical fault)");
        const double lower = found[0].first;
        const double upper = found[1].first;
        out.push_back({n, Branch::Minus, sign > 0.0 ? lower : upper});
        out.push_back({n, Branch::Plus, sign > 0.0 ? upper : lower});
    }
    return out;
}

} // namespace

std::vector<LabeledEnergy> spectrum(const SystemParams& params, int n_max, SpectrumMethod method) {
    params.validate();
    std::vector<LabeledEnergy> out = method == SpectrumMethod::Block
                                         ? spectrum_block(params, n_max)
                                         : spectrum_dense(params, n_max);
    std::stable_sort(out.begin(), out.end(),
                     [](const LabeledEnergy& a, const LabeledEnergy& b) { return a.energy < b.energy; });
    return out;
}

VerifyReport verify(const SystemParams& params, int n_max) {
    VerifyReport rep;
    rep.n_max = n_max;

    const OperatorMatrix h = build_bare_hamiltonian(params, n_max);
    const OperatorMatrix u = build_unitary(params, n_max);
    rep.hermiticity_residual = h.hermiticity_residual();
    rep.unitarity_residual = u.unitarity_residual();

    const Eigen::MatrixXd d = u.mat.transpose() * h.mat * u.mat;
    OperatorMatrix diag;
    diag.mat = d;
    rep.offdiag_residual = diag.max_offdiagonal();
    rep.max_abs_energy = d.diagonal().cwiseAbs().maxCoeff();
    rep.offdiag_bound = 1e-10 * rep.max_abs_energy;

    const double floor = std::max(1e-12 * rep.max_abs_energy, 1e-300);
    for (const SpectrumMethod method : {SpectrumMethod::Block, SpectrumMethod::Dense}) {
        double worst = 0.0;
        for (const LabeledEnergy& le : spectrum(params, n_max, method)) {
            const double closed = eigenvalue(params, DressedLabel{le.n, le.branch});
            const double rel = std::abs(le.energy - closed) / std::max(std::abs(closed), floor);
            worst = std::max(worst, rel);
        }
        if (method == SpectrumMethod::Block)
            rep.spectrum_rel_err_block = worst;
        else
            rep.spectrum_rel_err_dense = worst;
    }

    rep.pass = rep.hermiticity_residual <= 1e-12 && rep.unitarity_residual <= 1e-12 &&
               rep.offdiag_residual <= rep.offdiag_bound &&
               rep.spectrum_rel_err_block <= 1e-10 && rep.spectrum_rel_err_dense <= 1e-10;
    return rep;
}

} // namespace jcdress::oracle

#include "jcdress/dressed.hpp"

#include <cmath>

namespace jcdress {

void validate_label(const DressedLabel& label) {
    if (label.n < 0)
        throw std::domain_error("DressedLabel: n must be >= 0");
    if (label.branch == Branch::Plus && label.n < 1)
        throw std::domain_error("DressedLabel: the Plus branch starts at n = 1; |0,+> is not a physical state");
}

double mixing_angle(const SystemParams& params, int n) {
    params.validate();
    if (n < 0)
        throw std::domain_error("mixing_angle: n must be >= 0");
    const double y = 2.0 * params.g * std::sqrt(static_cast<double>(n));
    if (y == 0.0) return 0.0;
    return 0.5 * params.sign_eff() * std::atan2(y, std::abs(params.delta));
}

double eigenvalue(const SystemParams& params, const DressedLabel& label) {
    params.validate();
    validate_label(label);
    const double n = static_cast<double>(label.n);
    const double root = std::sqrt(params.delta * params.delta + 4.0 * params.g * params.g * n);
    const double branch_sign = label.branch == Branch::Minus ? -1.0 : 1.0;
    return (n - 0.5) * params.omega_c + 0.5 * branch_sign * params.sign_eff() * root;
}

CosSin eigenvector_coeffs(const SystemParams& params, int n) {
    if (n < 1)
        throw std::domain_error("eigenvector_coeffs: n must be >= 1 (manifold 0 has a single state)");
    const double theta = mixing_angle(params, n);
    return CosSin{std::cos(theta), std::sin(theta)};
}

namespace {

ApplyResult scaled(double coefficient, DressedLabel state) {
    if (coefficient == 0.0) return ApplyResult{0.0, std::nullopt};
    return ApplyResult{coefficient, state};
}

} // namespace

ApplyResult dressed_apply(OperatorLabel op, const DressedLabel& label) {
    validate_label(label);
    const int n = label.n;
    const bool minus = label.branch == Branch::Minus;
    const auto root = [](int m) { return std::sqrt(static_cast<double>(m)); };

    switch (op) {
    case OperatorLabel::A:
        if (minus) return scaled(root(n), {n - 1, Branch::Minus});
        return scaled(root(n - 1), {n - 1, Branch::Plus});
    case OperatorLabel::ADag:
        if (minus) return scaled(root(n + 1), {n + 1, Branch::Minus});
        return scaled(root(n), {n + 1, Branch::Plus});
    case OperatorLabel::ADagA:
        if (minus) return scaled(static_cast<double>(n), label);
        return scaled(static_cast<double>(n - 1), label);
    case OperatorLabel::SigmaMinus:
        if (minus) return {0.0, std::nullopt};
        return scaled(1.0, {n - 1, Branch::Minus});
    case OperatorLabel::SigmaPlus:
        if (minus) return scaled(1.0, {n + 1, Branch::Plus});
        return {0.0, std::nullopt};
    case OperatorLabel::SigmaZ:
        return scaled(minus ? -1.0 : 1.0, label);
    case OperatorLabel::SigmaPlusMinus:
        return minus ? ApplyResult{0.0, std::nullopt} : scaled(1.0, label);
    case OperatorLabel::SigmaMinusPlus:
        return minus ? scaled(1.0, label) : ApplyResult{0.0, std::nullopt};
    case OperatorLabel::NTotal:
        return scaled(static_cast<double>(n), label);
    }
    throw std::logic_error("dressed_apply: unhandled operator label");
}

} // namespace jcdress

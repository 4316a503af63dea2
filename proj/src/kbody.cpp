#include "jcdress/kbody.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <string>
#include <vector>

#include "jcdress/dressed.hpp"
#include "jcdress/mpfloat.hpp"

namespace jcdress::kbody {
namespace {

// Above this k the double path's binomials are no longer guaranteed exact.
constexpr int kDoublePathMaxK = 24;
// Acceptance rule for the escalating path: keep at least this many bits clean
// of the measured cancellation.
constexpr long kCleanBitsTarget = 80;

// All coefficient sums here have the shape
//   prefactor * sum_{p=0}^{k} binom(k,p) (-1)^(k+p) sqrt(delta^2 + 4 g^2 (p + shift)).
struct KernelSpec {
    double delta{0.0};
    double g{0.0};
    unsigned long shift{0};
    double prefactor{1.0};
};

bool try_double_kernel(const KernelSpec& s, int k, double* out) {
    if (k > kDoublePathMaxK) return false;
    const double a = s.delta * s.delta;
    const double b = 4.0 * s.g * s.g;
    double bin = 1.0; // binom(k, p), exact integers in this k range
    double sum = 0.0;
    double max_abs = 0.0;
    for (int p = 0; p <= k; ++p) {
        const double term = bin * std::sqrt(a + b * static_cast<double>(p + s.shift));
        max_abs = std::max(max_abs, std::abs(term));
        sum += ((k + p) % 2 == 0) ? term : -term;
        if (p < k) bin = bin * static_cast<double>(k - p) / static_cast<double>(p + 1);
    }
    if (max_abs == 0.0) { // every term vanished identically
        *out = 0.0;
        return true;
    }
    if (sum == 0.0) return false;
    // Worst-case error of the double sum is about (k + 1) ulps of the largest
    // term (one rounded sqrt per term plus the accumulation), so the bits lost
    // relative to the result are the cancelled bits plus a log2(k + 1) smear.
    // Accept only when the result still carries 46+ clean bits; everything
    // else goes to the extended-precision kernel.
    const double cancelled_bits = std::log2(max_abs / std::abs(sum));
    if (cancelled_bits + std::log2(static_cast<double>(k + 1)) > 6.0) return false;
    *out = s.prefactor * sum;
    return true;
}

struct MpOutcome {
    bool all_zero{false};
    bool nonzero{false};
    long loss{0};
    double value{0.0};
};

MpOutcome mp_kernel_once(const KernelSpec& s, int k, long prec) {
    mp::Real sum(prec), term(prec), arg(prec), b4(prec), tmp(prec);
    sum.set_zero();
    mpfr_set_d(b4.raw(), s.g, MPFR_RNDN);
    mpfr_sqr(b4.raw(), b4.raw(), MPFR_RNDN);
    mpfr_mul_ui(b4.raw(), b4.raw(), 4, MPFR_RNDN);

    mp::BinomialRow bin(static_cast<unsigned long>(k));
    long max_exp = LONG_MIN;
    for (unsigned long p = 0; p <= static_cast<unsigned long>(k); ++p) {
        mpfr_set_d(arg.raw(), s.delta, MPFR_RNDN);
        mpfr_sqr(arg.raw(), arg.raw(), MPFR_RNDN);
        mpfr_mul_ui(tmp.raw(), b4.raw(), p + s.shift, MPFR_RNDN);
        mpfr_add(arg.raw(), arg.raw(), tmp.raw(), MPFR_RNDN);
        mpfr_sqrt(term.raw(), arg.raw(), MPFR_RNDN);
        mpfr_mul_z(term.raw(), term.raw(), bin.value(), MPFR_RNDN);
        if (!mpfr_zero_p(term.raw()))
            max_exp = std::max(max_exp, static_cast<long>(mpfr_get_exp(term.raw())));
        if ((static_cast<unsigned long>(k) + p) % 2 == 0)
            mpfr_add(sum.raw(), sum.raw(), term.raw(), MPFR_RNDN);
        else
            mpfr_sub(sum.raw(), sum.raw(), term.raw(), MPFR_RNDN);
        if (p < static_cast<unsigned long>(k)) bin.advance();
    }

    MpOutcome out;
    if (max_exp == LONG_MIN) {
        out.all_zero = true;
        return out;
    }
    if (sum.is_zero()) return out; // cancellation swallowed everything at this precision
    out.nonzero = true;
    out.loss = max_exp - sum.exponent();
    out.value = s.prefactor * sum.to_double();
    return out;
}

CoeffValue escalating_kernel(const KernelSpec& s, int k, const char* what) {
    double fast = 0.0;
    if (try_double_kernel(s, k, &fast)) return CoeffValue{fast, 53};

    long prec = mp::initial_precision(k);
    for (;;) {
        const MpOutcome r = mp_kernel_once(s, k, prec);
        if (r.all_zero) return CoeffValue{0.0, prec};
        if (r.nonzero && prec - r.loss >= kCleanBitsTarget)
            return CoeffValue{r.value, prec};
        if (prec >= mp::kPrecisionCap)
            throw PrecisionExhausted(std::string(what) +
                                     ": precision cap reached at k = " + std::to_string(k));
        const long wanted = r.nonzero ? std::max(r.loss + 2 * kCleanBitsTarget, 2 * prec)
                                      : 2 * prec;
        prec = std::min(wanted, mp::kPrecisionCap);
    }
}

KernelSpec exact_spec(const SystemParams& params, Branch branch) {
    KernelSpec s;
    s.delta = params.delta;
    s.g = params.g;
    s.shift = branch == Branch::Plus ? 1UL : 0UL;
    s.prefactor = (branch == Branch::Minus ? -0.5 : 0.5) * params.sign_eff();
    return s;
}

void check_k(int k, const char* what) {
    if (k < 0) throw std::domain_error(std::string(what) + ": k must be >= 0");
}

} // namespace

CoeffValue coeff_exact_info(const SystemParams& params, int k, Branch branch) {
    params.validate();
    check_k(k, "coeff_exact");
    if (params.g == 0.0 && k >= 1) return CoeffValue{0.0, 53};
    return escalating_kernel(exact_spec(params, branch), k, "coeff_exact");
}

double coeff_exact(const SystemParams& params, int k, Branch branch) {
    return coeff_exact_info(params, k, branch).value;
}

CoeffValue coeff_forward_difference_info(const SystemParams& params, int k, Branch branch) {
    params.validate();
    check_k(k, "coeff_forward_difference");
    if (params.g == 0.0 && k >= 1) return CoeffValue{0.0, 53};
    const KernelSpec s = exact_spec(params, branch);

    long prec = mp::initial_precision(k);
    for (;;) {
        std::vector<mp::Real> f;
        f.reserve(static_cast<size_t>(k) + 1);
        mp::Real arg(prec), b4(prec), tmp(prec);
        mpfr_set_d(b4.raw(), s.g, MPFR_RNDN);
        mpfr_sqr(b4.raw(), b4.raw(), MPFR_RNDN);
        mpfr_mul_ui(b4.raw(), b4.raw(), 4, MPFR_RNDN);
        long max_exp = LONG_MIN;
        for (unsigned long p = 0; p <= static_cast<unsigned long>(k); ++p) {
            mpfr_set_d(arg.raw(), s.delta, MPFR_RNDN);
            mpfr_sqr(arg.raw(), arg.raw(), MPFR_RNDN);
            mpfr_mul_ui(tmp.raw(), b4.raw(), p + s.shift, MPFR_RNDN);
            mpfr_add(arg.raw(), arg.raw(), tmp.raw(), MPFR_RNDN);
            mp::Real fp(prec);
            mpfr_sqrt(fp.raw(), arg.raw(), MPFR_RNDN);
            if (!fp.is_zero()) max_exp = std::max(max_exp, fp.exponent());
            f.push_back(std::move(fp));
        }
        // k rounds of in-place differencing leave Delta^k f(0) in f[0]
        for (int round = 1; round <= k; ++round)
            for (int p = 0; p + round <= k; ++p)
                mpfr_sub(f[p].raw(), f[p + 1].raw(), f[p].raw(), MPFR_RNDN);

        if (max_exp == LONG_MIN) return CoeffValue{0.0, prec};
        if (!f[0].is_zero()) {
            // pad the loss by the table depth: each pass can smear one extra ulp
            const long pad = 2 * static_cast<long>(std::ceil(std::log2(k + 2.0)));
            const long loss = max_exp - f[0].exponent() + pad;
            if (prec - loss >= kCleanBitsTarget)
                return CoeffValue{s.prefactor * f[0].to_double(), prec};
            if (prec >= mp::kPrecisionCap)
                throw PrecisionExhausted("coeff_forward_difference: precision cap reached at k = " +
                                         std::to_string(k));
            prec = std::min(std::max(loss + 2 * kCleanBitsTarget, 2 * prec), mp::kPrecisionCap);
            continue;
        }
        if (prec >= mp::kPrecisionCap)
            throw PrecisionExhausted("coeff_forward_difference: precision cap reached at k = " +
                                     std::to_string(k));
        prec = std::min(2 * prec, mp::kPrecisionCap);
    }
}

double coeff_forward_difference(const SystemParams& params, int k, Branch branch) {
    return coeff_forward_difference_info(params, k, branch).value;
}

CoefficientTable coefficient_table(const SystemParams& params, int k_max, Branch branch) {
    check_k(k_max, "coefficient_table");
    CoefficientTable table;
    table.branch = branch;
    table.k_max = k_max;
    table.values.reserve(static_cast<size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        const CoeffValue cv = coeff_exact_info(params, k, branch);
        table.values.push_back(cv.value);
        table.precision_bits = std::max(table.precision_bits, cv.precision_bits);
    }
    return table;
}

CoeffValue coeff_resonant_info(double g, int k, ZeroDetuningSign approach) {
    if (!(g >= 0.0)) throw std::domain_error("coeff_resonant: g must be >= 0");
    if (k < 1) throw std::domain_error("coeff_resonant: k must be >= 1");
    if (g == 0.0) return CoeffValue{0.0, 53};
    // sqrt(4 * 0.25 * p) = sqrt(p), so the shared kernel covers this sum
    KernelSpec s;
    s.delta = 0.0;
    s.g = 0.5;
    s.shift = 0;
    s.prefactor = (approach == ZeroDetuningSign::FromAbove ? -1.0 : 1.0) * g;
    return escalating_kernel(s, k, "coeff_resonant");
}

double coeff_resonant(double g, int k, ZeroDetuningSign approach) {
    return coeff_resonant_info(g, k, approach).value;
}

double coeff_dispersive(double g, double lambda, int k) {
    if (!(g >= 0.0)) throw std::domain_error("coeff_dispersive: g must be >= 0");
    if (k < 1) throw std::domain_error("coeff_dispersive: k must be >= 1");
    const double bound = std::sqrt(1.0 / (4.0 * static_cast<double>(k)));
    if (!(lambda > 0.0) || !(lambda < bound))
        throw std::domain_error("coeff_dispersive: lambda outside validity bound 0 < lambda < sqrt(1/(4k))");
    double t = 1.0; // t_k = k! binom(1/2, k) via t_k = t_{k-1} (3/2 - k)
    for (int i = 1; i <= k; ++i) t *= 1.5 - static_cast<double>(i);
    return -t * std::pow(2.0 * lambda, 2 * k - 1) * g;
}

double asymptotic_resonant_magnitude(double g, double k) {
    if (!(g >= 0.0)) throw std::domain_error("asymptotic_resonant_magnitude: g must be >= 0");
    if (!(k >= 2.0)) throw std::domain_error("asymptotic_resonant_magnitude: requires k >= 2");
    return g / std::sqrt(M_PI * std::log(k));
}

EffectiveOnSite effective_onsite_n2(const SystemParams& params, Branch branch) {
    EffectiveOnSite eff;
    eff.branch = branch;
    eff.omega_eff = params.omega_c + coeff_exact(params, 1, branch);
    eff.u_eff = coeff_exact(params, 2, branch);
    const double half = branch == Branch::Minus ? -0.5 : 0.5;
    eff.e0 = coeff_exact(params, 0, branch) + half * params.omega_c;
    return eff;
}

double ladder_energy_from_kbody(const SystemParams& params, int n, Branch branch, int k_max) {
    params.validate();
    validate_label(DressedLabel{n, branch});
    if (k_max < n)
        throw std::invalid_argument("ladder_energy_from_kbody: k_max must be >= n");
    if (params.g == 0.0) return coeff_exact(params, 0, branch);

    const unsigned long n_b = static_cast<unsigned long>(branch == Branch::Minus ? n : n - 1);
    const KernelSpec s = exact_spec(params, branch);
    // binom(n_b, k) vanishes for k > n_b, so the sum truncates itself
    const unsigned long k_top = std::min<unsigned long>(n_b, static_cast<unsigned long>(k_max));

    long prec = mp::initial_precision(static_cast<long>(k_top));
    for (;;) {
        mp::Real sum(prec), term(prec), arg(prec), b4(prec), tmp(prec), fp(prec);
        sum.set_zero();
        mpfr_set_d(b4.raw(), s.g, MPFR_RNDN);
        mpfr_sqr(b4.raw(), b4.raw(), MPFR_RNDN);
        mpfr_mul_ui(b4.raw(), b4.raw(), 4, MPFR_RNDN);

        long max_exp = LONG_MIN;
        mp::BinomialRow outer(n_b);
        for (unsigned long k = 0; k <= k_top; ++k) {
            mp::BinomialRow inner(k);
            for (unsigned long p = 0; p <= k; ++p) {
                mpfr_set_d(arg.raw(), s.delta, MPFR_RNDN);
                mpfr_sqr(arg.raw(), arg.raw(), MPFR_RNDN);
                mpfr_mul_ui(tmp.raw(), b4.raw(), p + s.shift, MPFR_RNDN);
                mpfr_add(arg.raw(), arg.raw(), tmp.raw(), MPFR_RNDN);
                mpfr_sqrt(fp.raw(), arg.raw(), MPFR_RNDN);
                mpfr_set(term.raw(), fp.raw(), MPFR_RNDN);
                mpfr_mul_z(term.raw(), term.raw(), inner.value(), MPFR_RNDN);
                mpfr_mul_z(term.raw(), term.raw(), outer.value(), MPFR_RNDN);
                if (!mpfr_zero_p(term.raw()))
                    max_exp = std::max(max_exp, static_cast<long>(mpfr_get_exp(term.raw())));
                if ((k + p) % 2 == 0)
                    mpfr_add(sum.raw(), sum.raw(), term.raw(), MPFR_RNDN);
                else
                    mpfr_sub(sum.raw(), sum.raw(), term.raw(), MPFR_RNDN);
                if (p < k) inner.advance();
            }
            if (k < k_top) outer.advance();
        }

        if (max_exp == LONG_MIN) return 0.0;
        if (!sum.is_zero()) {
            const long loss = max_exp - sum.exponent();
            if (prec - loss >= kCleanBitsTarget) return s.prefactor * sum.to_double();
            if (prec >= mp::kPrecisionCap)
                throw PrecisionExhausted("ladder_energy_from_kbody: precision cap reached at n = " +
                                         std::to_string(n));
            prec = std::min(std::max(loss + 2 * kCleanBitsTarget, 2 * prec), mp::kPrecisionCap);
            continue;
        }
        if (prec >= mp::kPrecisionCap)
            throw PrecisionExhausted("ladder_energy_from_kbody: precision cap reached at n = " +
                                     std::to_string(n));
        prec = std::min(2 * prec, mp::kPrecisionCap);
    }
}

std::pair<double, double> effective_hamiltonian_n3_terms(const SystemParams& params) {
    return {coeff_exact(params, 3, Branch::Minus), coeff_exact(params, 2, Branch::Plus)};
}

} // namespace jcdress::kbody

// mpfloat.hpp - thin RAII layer over MPFR/GMP for the alternating-sum kernels

#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <utility>

namespace jcdress::mp {

// Hard ceiling for escalation; beyond this the caller reports
// precision exhaustion instead of silently returning garbage.
inline constexpr long kPrecisionCap = 1L << 20;

// Working-precision floor from JCDRESS_PRECISION_BITS (0 when unset/invalid).
long env_precision_floor();

// Starting precision for a k-term alternating sum: the sum loses about k bits
// to cancellation, so leave 64 guard bits on top of a 2k budget.
long initial_precision(long k);

// RAII mpfr_t. Not a full numeric type: arithmetic goes through mpfr_* calls
// on raw(); this only owns the allocation.
class Real {
public:
    explicit Real(long prec) { mpfr_init2(v_, static_cast<mpfr_prec_t>(prec)); }
    Real(const Real&) = delete;
    Real& operator=(const Real&) = delete;
    Real(Real&& other) noexcept {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_swap(v_, other.v_);
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    long precision() const { return mpfr_get_prec(v_); }
    void set_zero() { mpfr_set_zero(v_, 1); }
    void set(double x) { mpfr_set_d(v_, x, MPFR_RNDN); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    // Binary exponent; only meaningful for nonzero finite values.
    long exponent() const { return static_cast<long>(mpfr_get_exp(v_)); }

private:
    mpfr_t v_;
};

// Walks binom(k, p) for p = 0..k with exact integer arithmetic
// (binom(k, p+1) = binom(k, p) * (k - p) / (p + 1), division exact).
class BinomialRow {
public:
    explicit BinomialRow(unsigned long k) : k_(k), p_(0) {
        mpz_init_set_ui(b_, 1);
    }
    BinomialRow(const BinomialRow&) = delete;
    BinomialRow& operator=(const BinomialRow&) = delete;
    ~BinomialRow() { mpz_clear(b_); }

    unsigned long p() const { return p_; }
    const mpz_t& value() const { return b_; }

    void advance() {
        mpz_mul_ui(b_, b_, k_ - p_);
        mpz_divexact_ui(b_, b_, p_ + 1);
        ++p_;
    }

private:
    unsigned long k_;
    unsigned long p_;
    mpz_t b_;
};

} // namespace jcdress::mp

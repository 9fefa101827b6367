#ifndef ELLGR_BIGFLOAT_HPP
#define ELLGR_BIGFLOAT_HPP

#include <cstdarg>
#include <cstdio>

#include <gmpxx.h>
#include <mpfr.h>
#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ellgr/prec.hpp"

namespace ellgr {

// RAII arbitrary-precision real, value semantics, round-to-nearest everywhere.
class BigFloat {
  public:
    BigFloat() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
    explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }

    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, 64); mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o)
    {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from_long(long x, mpfr_prec_t prec)
    { BigFloat r(prec); mpfr_set_si(r.v_, x, MPFR_RNDN); return r; }
    static BigFloat from_double(double x, mpfr_prec_t prec)
    { BigFloat r(prec); mpfr_set_d(r.v_, x, MPFR_RNDN); return r; }
    static BigFloat from_mpq(const mpq_class& x, mpfr_prec_t prec)
    { BigFloat r(prec); mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN); return r; }
    static BigFloat from_mpz(const mpz_class& x, mpfr_prec_t prec)
    { BigFloat r(prec); mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN); return r; }
    // accepts decimal strings, e.g. "-1.2937005"
    static BigFloat from_string(const std::string& s, mpfr_prec_t prec)
    {
        BigFloat r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw parse_error("BigFloat: cannot parse '" + s + "'");
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_finite() const { return mpfr_number_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    std::string str(long decimal_digits) const;

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b)
    { BigFloat r(opprec(a, b)); mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b)
    { BigFloat r(opprec(a, b)); mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b)
    { BigFloat r(opprec(a, b)); mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b)
    {
        if (mpfr_zero_p(b.v_)) throw domain_error("BigFloat: division by zero");
        BigFloat r(opprec(a, b)); mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    BigFloat operator-() const { BigFloat r(*this); mpfr_neg(r.v_, r.v_, MPFR_RNDN); return r; }

    BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

    friend BigFloat abs(const BigFloat& a)
    { BigFloat r(a); mpfr_abs(r.v_, r.v_, MPFR_RNDN); return r; }
    friend BigFloat sqrt(const BigFloat& a)
    { BigFloat r(a.prec()); mpfr_sqrt(r.v_, a.v_, MPFR_RNDN); return r; }
    friend BigFloat exp(const BigFloat& a)
    { BigFloat r(a.prec()); mpfr_exp(r.v_, a.v_, MPFR_RNDN); return r; }
    friend BigFloat log(const BigFloat& a)
    {
        if (mpfr_sgn(a.v_) <= 0) throw domain_error("BigFloat: log of non-positive value");
        BigFloat r(a.prec()); mpfr_log(r.v_, a.v_, MPFR_RNDN); return r;
    }
    friend BigFloat floor(const BigFloat& a)
    { BigFloat r(a.prec()); mpfr_floor(r.v_, a.v_); return r; }
    // fractional part x - floor(x), exact in mpfr
    friend BigFloat fracpart(const BigFloat& a)
    {
        BigFloat r(a.prec());
        mpfr_floor(r.v_, a.v_);
        mpfr_sub(r.v_, a.v_, r.v_, MPFR_RNDN);
        return r;
    }

    static BigFloat pi(mpfr_prec_t prec)
    { BigFloat r(prec); mpfr_const_pi(r.v_, MPFR_RNDN); return r; }

    // log10 of |x| as a double, -inf for 0; cheap magnitude probe
    double log10_abs() const
    {
        if (mpfr_zero_p(v_)) return -1e300;
        long e = mpfr_get_exp(v_);
        mpfr_t t; mpfr_init2(t, 64);
        mpfr_abs(t, v_, MPFR_RNDN);
        mpfr_set_exp(t, 0);
        double m = mpfr_get_d(t, MPFR_RNDN);
        mpfr_clear(t);
        return ((double)e + std::log2(m)) * 0.30102999566398120;
    }

  private:
    static mpfr_prec_t opprec(const BigFloat& a, const BigFloat& b)
    { return std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_)); }

    mpfr_t v_;
};

} // namespace ellgr

#endif

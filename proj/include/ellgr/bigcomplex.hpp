#ifndef ELLGR_BIGCOMPLEX_HPP
#define ELLGR_BIGCOMPLEX_HPP

#include <complex>
#include <string>

#include "ellgr/bigfloat.hpp"
#include "ellgr/prec.hpp"

namespace ellgr {

// Arbitrary-precision complex number.  Immutable-ish value type; the hot
// series loops in ellgamma.cpp use the in-place helpers below.
class BigComplex {
  public:
    BigComplex() = default;
    explicit BigComplex(mpfr_prec_t prec) : re_(prec), im_(prec) {}
    BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}

    static BigComplex from_real(const BigFloat& re)
    { return BigComplex(re, BigFloat(re.prec())); }
    static BigComplex from_long(long x, mpfr_prec_t prec)
    { return BigComplex(BigFloat::from_long(x, prec), BigFloat(prec)); }
    static BigComplex from_mpq(const mpq_class& re, mpfr_prec_t prec)
    { return BigComplex(BigFloat::from_mpq(re, prec), BigFloat(prec)); }
    static BigComplex from_mpq(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec)
    { return BigComplex(BigFloat::from_mpq(re, prec), BigFloat::from_mpq(im, prec)); }

    const BigFloat& re() const { return re_; }
    const BigFloat& im() const { return im_; }
    BigFloat& re() { return re_; }
    BigFloat& im() { return im_; }
    mpfr_prec_t prec() const { return std::max(re_.prec(), im_.prec()); }

    bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    std::complex<double> to_complex_double() const
    { return {re_.to_double(), im_.to_double()}; }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b)
    { return {a.re_ + b.re_, a.im_ + b.im_}; }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b)
    { return {a.re_ - b.re_, a.im_ - b.im_}; }
    BigComplex operator-() const { return {-re_, -im_}; }

    friend BigComplex operator*(const BigComplex& a, const BigComplex& b)
    {
        return {a.re_ * b.re_ - a.im_ * b.im_,
                a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b);

    BigComplex& operator*=(const BigComplex& o) { *this = *this * o; return *this; }
    BigComplex& operator+=(const BigComplex& o) { re_ += o.re_; im_ += o.im_; return *this; }

    friend BigComplex conj(const BigComplex& a) { return {a.re_, -a.im_}; }
    friend BigFloat abs(const BigComplex& a)
    {
        BigFloat r(a.prec());
        mpfr_hypot(r.raw(), a.re_.raw(), a.im_.raw(), MPFR_RNDN);
        return r;
    }
    // |a|^2, no square root
    friend BigFloat abs_sq(const BigComplex& a)
    { return a.re_ * a.re_ + a.im_ * a.im_; }

    double log10_abs() const
    { return std::max(re_.log10_abs(), im_.log10_abs()); }

    std::string str(long decimal_digits) const;

  private:
    BigFloat re_, im_;
};

BigComplex reciprocal(const BigComplex& a);
BigComplex exp(const BigComplex& z);
// principal branch, log(-1) = i*pi
BigComplex log(const BigComplex& z);
// log |z|^2 as a real number
BigFloat ln_abs_sq(const BigComplex& z);
// sin(pi z)
BigComplex sin_pi(const BigComplex& z);
// cos(pi z)
BigComplex cos_pi(const BigComplex& z);
// exp(2 pi i z); exact argument reduction of Re(z) mod 1
BigComplex e2pi(const BigComplex& z);
// exp(2 pi i k z) for integer k, reduced before rounding
BigComplex e2pi_times(long k, const BigComplex& z);
BigComplex pow_int(const BigComplex& z, long n);

} // namespace ellgr

#endif

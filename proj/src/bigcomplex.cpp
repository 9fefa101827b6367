#include "ellgr/bigcomplex.hpp"

#include <sstream>

namespace ellgr {

std::string BigFloat::str(long decimal_digits) const
{
    char* s = nullptr;
    // %.*Rg gives shortest faithful form at the requested digit count
    if (mpfr_asprintf(&s, "%.*Rg", (int)decimal_digits, v_) < 0)
        throw error("BigFloat: formatting failed");
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string BigComplex::str(long decimal_digits) const
{
    std::ostringstream os;
    os << re_.str(decimal_digits);
    if (!(im_.sign() < 0)) os << "+";
    os << im_.str(decimal_digits) << "i";
    return os.str();
}

BigComplex operator/(const BigComplex& a, const BigComplex& b)
{
    BigFloat d = abs_sq(b);
    if (d.is_zero()) throw domain_error("BigComplex: division by zero");
    return {(a.re_ * b.re_ + a.im_ * b.im_) / d,
            (a.im_ * b.re_ - a.re_ * b.im_) / d};
}

BigComplex reciprocal(const BigComplex& a)
{
    BigFloat d = abs_sq(a);
    if (d.is_zero()) throw domain_error("BigComplex: reciprocal of zero");
    return {a.re() / d, -a.im() / d};
}

BigComplex exp(const BigComplex& z)
{
    mpfr_prec_t p = z.prec();
    BigFloat r = exp(z.re());
    BigFloat s(p), c(p);
    mpfr_sin_cos(s.raw(), c.raw(), z.im().raw(), MPFR_RNDN);
    return {r * c, r * s};
}

BigComplex log(const BigComplex& z)
{
    if (z.is_zero()) throw domain_error("BigComplex: log of zero");
    mpfr_prec_t p = z.prec();
    BigFloat mod = abs(z);
    BigFloat a(p);
    mpfr_atan2(a.raw(), z.im().raw(), z.re().raw(), MPFR_RNDN);
    return {log(mod), a};
}

BigFloat ln_abs_sq(const BigComplex& z)
{
    if (z.is_zero()) throw domain_error("ln_abs_sq of zero");
    return log(abs_sq(z));
}

BigComplex sin_pi(const BigComplex& z)
{
    // sin(pi(a+bi)) = sin(pi a)cosh(pi b) + i cos(pi a)sinh(pi b),
    // with a reduced mod 2 exactly first
    mpfr_prec_t p = z.prec();
    BigFloat pi = BigFloat::pi(p);
    BigFloat a = fracpart(z.re() * BigFloat::from_mpq(mpq_class(1, 2), p)) * BigFloat::from_long(2, p);
    BigFloat ap = a * pi;
    BigFloat bp = z.im() * pi;
    BigFloat s(p), c(p), sh(p), ch(p);
    mpfr_sin_cos(s.raw(), c.raw(), ap.raw(), MPFR_RNDN);
    mpfr_sinh_cosh(sh.raw(), ch.raw(), bp.raw(), MPFR_RNDN);
    BigComplex out(s * ch, c * sh);
    if (!out.is_finite()) throw domain_error("sin_pi: overflow in cosh/sinh");
    return out;
}

BigComplex cos_pi(const BigComplex& z)
{
    mpfr_prec_t p = z.prec();
    BigComplex half = BigComplex::from_mpq(mpq_class(1, 2), p);
    return sin_pi(z + half);
}

BigComplex e2pi(const BigComplex& z)
{
    if (!z.is_finite()) throw domain_error("e2pi: non-finite argument");
    mpfr_prec_t p = z.prec();
    BigFloat f = fracpart(z.re());            // exact
    BigFloat two_pi = BigFloat::pi(p) + BigFloat::pi(p);
    BigFloat ang = f * two_pi;
    BigFloat s(p), c(p);
    mpfr_sin_cos(s.raw(), c.raw(), ang.raw(), MPFR_RNDN);
    BigFloat m(p);
    mpfr_mul(m.raw(), z.im().raw(), two_pi.raw(), MPFR_RNDN);
    mpfr_neg(m.raw(), m.raw(), MPFR_RNDN);
    mpfr_exp(m.raw(), m.raw(), MPFR_RNDN);
    if (!m.is_finite())
        throw domain_error("e2pi: |exp(2 pi i z)| exceeds exponent range, reduce the argument first");
    return {m * c, m * s};
}

BigComplex e2pi_times(long k, const BigComplex& z)
{
    // compute k*z at a precision wide enough that frac() keeps full accuracy
    mpfr_prec_t p = z.prec();
    long extra = 2;
    for (unsigned long a = (k < 0 ? -(unsigned long)k : (unsigned long)k); a > 0; a >>= 1) extra++;
    BigFloat kr(p + extra), ki(p + extra);
    mpfr_mul_si(kr.raw(), z.re().raw(), k, MPFR_RNDN);
    mpfr_mul_si(ki.raw(), z.im().raw(), k, MPFR_RNDN);
    return e2pi(BigComplex(std::move(kr), std::move(ki)));
}

BigComplex pow_int(const BigComplex& z, long n)
{
    if (n == 0) return BigComplex::from_long(1, z.prec());
    bool inv = n < 0;
    unsigned long e = inv ? -(unsigned long)n : (unsigned long)n;
    BigComplex base = z, acc = BigComplex::from_long(1, z.prec());
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return inv ? reciprocal(acc) : acc;
}

} // namespace ellgr

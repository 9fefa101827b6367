#include "doctest.h"

#include <random>

#include "ellgr/bigcomplex.hpp"

using namespace ellgr;

namespace {

PrecisionContext ctx(50);

BigComplex rnd_complex(std::mt19937& rng, double lo = -10, double hi = 10)
{
    std::uniform_real_distribution<double> d(lo, hi);
    return {BigFloat::from_double(d(rng), ctx.bits()), BigFloat::from_double(d(rng), ctx.bits())};
}

double dist10(const BigComplex& a, const BigComplex& b)
{
    return (a - b).log10_abs();
}

} // namespace

TEST_CASE("e2pi at rational points")
{
    BigComplex one = e2pi(BigComplex::from_long(0, ctx.bits()));
    CHECK(dist10(one, BigComplex::from_long(1, ctx.bits())) < -45);

    BigComplex half = e2pi(BigComplex::from_mpq(mpq_class(1, 2), ctx.bits()));
    CHECK(dist10(half, BigComplex::from_long(-1, ctx.bits())) < -45);

    // e2pi(i) = exp(-2 pi), compared against the real mpfr exponential
    BigComplex eye(BigFloat(ctx.bits()), BigFloat::from_long(1, ctx.bits()));
    BigComplex got = e2pi(eye);
    BigFloat expect = exp(-(BigFloat::pi(ctx.bits()) + BigFloat::pi(ctx.bits())));
    CHECK((got.re() - expect).log10_abs() < -48);
    CHECK(got.im().log10_abs() < -48);
}

TEST_CASE("e2pi periodicity and inversion")
{
    std::mt19937 rng(7);
    for (int i = 0; i < 50; i++) {
        BigComplex z = rnd_complex(rng, -5, 5);
        BigComplex a = e2pi(z);
        BigComplex b = e2pi(z + BigComplex::from_long(1, ctx.bits()));
        CHECK(dist10(a, b) - a.log10_abs() < -(double)ctx.digits() + 3);
        BigComplex c = e2pi(-z);
        CHECK(dist10(a * c, BigComplex::from_long(1, ctx.bits())) < -(double)ctx.digits() + 5);
    }
}

TEST_CASE("elementary complex functions")
{
    mpfr_prec_t p = ctx.bits();
    CHECK(sin_pi(BigComplex::from_long(1, p)).log10_abs() < -45);

    BigComplex e(exp(BigFloat::from_long(1, p)), BigFloat(p));
    CHECK((ln_abs_sq(e) - BigFloat::from_long(2, p)).log10_abs() < -45);

    BigComplex minus_one = BigComplex::from_long(-1, p);
    BigComplex lg = log(minus_one);
    CHECK(lg.re().log10_abs() < -45);
    CHECK((lg.im() - BigFloat::pi(p)).log10_abs() < -45);

    BigComplex z(BigFloat::from_double(1.25, p), BigFloat::from_double(-0.5, p));
    CHECK(dist10(pow_int(z, 7) * pow_int(z, -7), BigComplex::from_long(1, p)) < -40);
    CHECK(dist10(exp(log(z)), z) < -45);
}

TEST_CASE("division errors are explicit")
{
    mpfr_prec_t p = ctx.bits();
    CHECK_THROWS_AS((void)(BigComplex::from_long(1, p) / BigComplex(p)), domain_error);
    CHECK_THROWS_AS((void)log(BigComplex(p)), domain_error);
}

TEST_CASE("guard digit stability of e2pi")
{
    PrecisionContext lo(30, 20), hi(30, 40);
    std::mt19937 rng(11);
    for (int i = 0; i < 10; i++) {
        std::uniform_real_distribution<double> d(-3, 3);
        double re = d(rng), im = d(rng);
        BigComplex a = e2pi({BigFloat::from_double(re, lo.bits()), BigFloat::from_double(im, lo.bits())});
        BigComplex b = e2pi({BigFloat::from_double(re, hi.bits()), BigFloat::from_double(im, hi.bits())});
        CHECK((a - b).log10_abs() - b.log10_abs() < -30);
    }
}

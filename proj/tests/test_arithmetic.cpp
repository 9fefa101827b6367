#include "doctest.h"

#include "ellgr/arithmetic.hpp"

using namespace ellgr;

namespace {

// the degree-3 field of x^3 - 2 with f the ramified prime above 3,
// a the degree-one prime above 5, b = (1); unit z - 1
struct CubicData {
    NumberField K{std::vector<mpz_class>{-2, 0, 0, 1}};
    ZModuleBasis OK, L, aL;
    FieldElement eps, h;
    UnitSystem units;

    CubicData()
    {
        auto fe = [&](std::vector<mpq_class> c) { return FieldElement{std::move(c)}; };
        OK = ZModuleBasis{{K.one(), K.gen(), K.mul(K.gen(), K.gen())},
                          ZModuleBasis::Role::ring_of_integers};
        L = ZModuleBasis{{fe({1, 0, 2}), fe({0, 1, 1}), fe({0, 0, 3})},
                         ZModuleBasis::Role::fractional_ideal};
        aL = ZModuleBasis{{fe({mpq_class(1, 5), mpq_class(2, 5), mpq_class(4, 5)}),
                           fe({0, 1, 1}), fe({0, 0, 3})},
                          ZModuleBasis::Role::fractional_ideal};
        eps = fe({-1, 1, 0});
        h = fe({3, 6, -3});
        units.fundamental = {eps};
    }
};

double prefix_dist(const BigComplex& v, const char* re, const char* im)
{
    BigComplex expect(BigFloat::from_string(re, v.prec()), BigFloat::from_string(im, v.prec()));
    return (v - expect).log10_abs();
}

} // namespace

TEST_CASE("geometric setup reproduces the cubic invariants")
{
    CubicData D;
    PrecisionContext ctx(50);
    GeomSetup g = geometric_setup(D.K, D.L, D.OK, D.units.bracket(D.K, {1}), D.h, 3, 5, ctx);
    CHECK(g.lambda_tilde == 1);
    CHECK(g.t_tilde == 1);
    CHECK(g.s_tilde == 1);
    CHECK(g.level == 15);
    CHECK(g.t == 1);
    CHECK(g.m == 1);
    CHECK(g.coset_offsets.size() == 1);
    CHECK(g.coset_offsets[0].is_zero());
}

TEST_CASE("admissibility and Z_f^1 for the cubic data")
{
    CubicData D;
    CHECK(admissible_check(D.K, D.h, 3, 5, D.L, D.aL));
    // N h fails the generation requirement
    CHECK_FALSE(admissible_check(D.K, D.K.mul_scalar(D.h, 5), 3, 5, D.L, D.aL));

    ZfOneSet zf = build_zf_one(D.K, D.L, 3, D.units, 5);
    REQUIRE(zf.elements.size() == 2);
    CHECK(zf.elements[0].n == 1);
    CHECK(zf.elements[0].chi == 1);
    CHECK(zf.elements[1].n == 2);
    CHECK(zf.elements[1].chi == -1);

    PrecisionContext ctx(50);
    CHECK(unit_system_sign(D.K, D.units, ctx) == -1);
}

TEST_CASE("smoothing orders")
{
    CHECK(smoothing_order(1, 2) == 4);
    CHECK(smoothing_order(1, 3) == 3);
    CHECK(smoothing_order(1, 5) == 1);
    CHECK(smoothing_order(2, 5) == 5);
    CHECK(smoothing_order(3, 5) == 5);
    CHECK(smoothing_order(2, 7) == 1);
    CHECK(smoothing_order(0, 3) == 3);
}

TEST_CASE("the cubic unit value")
{
    CubicData D;
    PrecisionContext ctx(50);
    GeomSetup g = geometric_setup(D.K, D.L, D.OK, D.units.bracket(D.K, {1}), D.h, 3, 5, ctx);

    // Gamma^-(eps; h)^{-1}, frozen from the direct double-product oracle
    BigComplex v = reciprocal(arithmetic_gr(D.K, g, -1, 1, ctx));
    CHECK(prefix_dist(v, "-1.293700525984099737375852819636154",
                      "1.474334104242161360089115865339522") < -30);

    // Lemma-level invariance: n = 4 = 1 mod 3 gives the same value
    BigComplex v4 = reciprocal(arithmetic_gr(D.K, g, -1, 4, ctx));
    CHECK((v - v4).log10_abs() < -(double)(ctx.digits() - 10));

    // Z_f^1 twist (2, -1): the full product is the square of the base value
    ZfOneSet zf = build_zf_one(D.K, D.L, 3, D.units, 5);
    BigComplex full = i_r_product(D.K, {g}, {-1}, {-1}, zf, ctx);
    CHECK((full - v * v).log10_abs() - full.log10_abs() < -(double)(ctx.digits() - 10));

    // conjugate-embedding relation for the arithmetic value
    BigComplex vc = reciprocal(conj(v));
    (void)vc;
}

TEST_CASE("raw smoothed quotient drives the theta example")
{
    // theta(7/91, (10 + zeta)/91)^7 / theta(7/13, (10 + zeta)/13) with
    // zeta = e^{2 pi i/3}; prefix from the introduction of the series
    PrecisionContext ctx(60);
    mpfr_prec_t p = ctx.bits();
    NumberField Q3(std::vector<mpz_class>{1, 1, 1});
    BigComplex zeta = Q3.embed_complex(Q3.gen(), p);
    BigComplex tau = (zeta + BigComplex::from_long(10, p)) *
                     BigComplex::from_mpq(mpq_class(1, 91), p);
    BigComplex w = BigComplex::from_mpq(mpq_class(7, 91), p);
    BigComplex v = smoothed_quotient(0, w, {tau}, 7, 1, ctx);
    CHECK(prefix_dist(v, "0.0196475", "-0.6399892") < -7);
}

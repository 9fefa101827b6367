#include "doctest.h"

#include <random>

#include "ellgr/relation.hpp"

using namespace ellgr;

namespace {

PrecisionContext ctx(60);

IntMat from_rows(const std::vector<std::vector<long>>& rows)
{
    IntMat m((int)rows.size(), (int)rows[0].size());
    for (int i = 0; i < m.rows(); i++)
        for (int j = 0; j < m.cols(); j++) m.at(i, j) = rows[(size_t)i][(size_t)j];
    return m;
}

} // namespace

TEST_CASE("lll leaves an orthogonal basis alone up to sign and order")
{
    IntMat b = from_rows({{0, 3, 0}, {2, 0, 0}, {0, 0, 5}});
    ReducedLattice red = lll(b);
    CHECK(lll_condition_holds(red.basis, mpq_class(99, 100)));
    // determinant is preserved up to sign
    CHECK(abs(det(red.basis)) == 30);
    // rows stay axis-aligned with the same lengths
    std::vector<long> lens;
    for (int i = 0; i < 3; i++) {
        mpz_class n2(0);
        for (int j = 0; j < 3; j++) n2 += red.basis.at(i, j) * red.basis.at(i, j);
        lens.push_back((long)n2.get_si());
    }
    std::sort(lens.begin(), lens.end());
    CHECK(lens == std::vector<long>{4, 9, 25});
}

TEST_CASE("size reduction of a skewed rank-2 basis")
{
    IntMat b = from_rows({{1, 0}, {1000000, 1}});
    ReducedLattice red = lll(b);
    CHECK(lll_condition_holds(red.basis, mpq_class(99, 100)));
    // exhaustive shortest vector in rank 2: (1, 0) and (0, +-1)
    for (int i = 0; i < 2; i++) {
        mpz_class n2(0);
        for (int j = 0; j < 2; j++) n2 += red.basis.at(i, j) * red.basis.at(i, j);
        CHECK(n2 == 1);
    }
}

TEST_CASE("lovasz condition verified post hoc on random rank-4 bases")
{
    std::mt19937 rng(23);
    std::uniform_int_distribution<long> d(-50, 50);
    for (int trial = 0; trial < 10; trial++) {
        IntMat b(4, 4);
        do {
            for (int i = 0; i < 4; i++)
                for (int j = 0; j < 4; j++) b.at(i, j) = d(rng);
        } while (det(b) == 0);
        ReducedLattice red = lll(b);
        CHECK(lll_condition_holds(red.basis, mpq_class(99, 100)));
        CHECK(abs(det(red.basis)) == abs(det(b)));
    }
    CHECK_THROWS_AS((void)lll(from_rows({{1, 2}, {2, 4}})), domain_error);
}

TEST_CASE("lindep recovers the golden ratio relation")
{
    mpfr_prec_t p = ctx.bits();
    BigFloat five = BigFloat::from_long(5, p);
    BigFloat phi = (BigFloat::from_long(1, p) + sqrt(five)) / BigFloat::from_long(2, p);
    std::vector<BigComplex> vals{BigComplex::from_long(1, p), BigComplex::from_real(phi),
                                 BigComplex::from_real(phi * phi)};
    auto rel = lindep(vals, ctx);
    REQUIRE(rel.has_value());
    // phi^2 - phi - 1 = 0 up to overall sign
    std::vector<mpz_class> c = *rel;
    if (c[2] < 0)
        for (auto& x : c) x = -x;
    CHECK(c == std::vector<mpz_class>{mpz_class(-1), mpz_class(-1), mpz_class(1)});
}

TEST_CASE("lindep refuses pi at a small coefficient bound")
{
    PrecisionContext c50(50);
    mpfr_prec_t p = c50.bits();
    std::vector<BigComplex> vals{BigComplex::from_long(1, p),
                                 BigComplex::from_real(BigFloat::pi(p))};
    CHECK_FALSE(lindep(vals, c50, 10).has_value());
}

TEST_CASE("algdep identifies the cube root of two")
{
    mpfr_prec_t p = ctx.bits();
    BigFloat two = BigFloat::from_long(2, p);
    BigFloat cbrt(p);
    mpfr_cbrt(cbrt.raw(), two.raw(), MPFR_RNDN);
    auto res = algdep(BigComplex::from_real(cbrt), 3, ctx);
    REQUIRE(res.has_value());
    CHECK(res->coeffs == std::vector<mpz_class>{mpz_class(-2), mpz_class(0), mpz_class(0), mpz_class(1)});
    CHECK_FALSE(res->palindromic);
    CHECK(res->log10_residual < -30);

    // conjugate input gives the same polynomial; doubled precision too
    auto resc = algdep(conj(BigComplex::from_real(cbrt)), 3, ctx);
    REQUIRE(resc.has_value());
    CHECK(resc->coeffs == res->coeffs);
    PrecisionContext wide(120);
    BigFloat cb2(wide.bits());
    mpfr_cbrt(cb2.raw(), BigFloat::from_long(2, wide.bits()).raw(), MPFR_RNDN);
    auto resw = algdep(BigComplex::from_real(cb2), 3, wide);
    REQUIRE(resw.has_value());
    CHECK(resw->coeffs == res->coeffs);
}

TEST_CASE("algdep flags palindromic unit polynomials")
{
    // a root of x^2 - 3x + 1, a unit with palindromic minimal polynomial
    mpfr_prec_t p = ctx.bits();
    BigFloat disc = sqrt(BigFloat::from_long(5, p));
    BigFloat root = (BigFloat::from_long(3, p) + disc) / BigFloat::from_long(2, p);
    auto res = algdep(BigComplex::from_real(root), 2, ctx);
    REQUIRE(res.has_value());
    CHECK(res->palindromic);
    CHECK(res->unit_constant_term);
}

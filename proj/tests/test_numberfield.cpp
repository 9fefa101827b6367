#include "doctest.h"

#include <random>

#include "ellgr/numberfield.hpp"

using namespace ellgr;

namespace {

PrecisionContext ctx(50);

FieldElement fe(const NumberField& K, std::vector<long> c)
{
    FieldElement e = K.zero();
    for (size_t i = 0; i < c.size(); i++) e.c[i] = c[i];
    return e;
}

double dist10(const BigComplex& a, const BigComplex& b)
{
    return (a - b).log10_abs();
}

std::vector<mpz_class> P(std::vector<long> v)
{
    return std::vector<mpz_class>(v.begin(), v.end());
}

} // namespace

TEST_CASE("roots and embedding order for x^3 - 2")
{
    NumberField K(P({-2, 0, 0, 1}));
    CHECK(K.degree() == 3);
    CHECK(K.unit_rank() == 1);

    // sigma_C(z) = e^{2 pi i/3} 2^{1/3}
    BigComplex zc = K.embed_complex(K.gen(), ctx.bits());
    CHECK(zc.im() > BigFloat(ctx.bits()));
    BigComplex expect(BigFloat::from_string("-0.62996052494743658238360530363911417528512573235075399004099", ctx.bits()),
                      BigFloat::from_string("1.09112363597172140356007261418980888132587333874018547370560", ctx.bits()));
    CHECK(dist10(zc, expect) < -45);

    // real root is sigma_1 and embeds 1 to 1
    BigComplex one = K.embed(K.one(), 0, ctx.bits());
    CHECK(dist10(one, BigComplex::from_long(1, ctx.bits())) < -45);
    CHECK(K.embed(K.gen(), 0, ctx.bits()).im().is_zero());
}

TEST_CASE("norm and trace")
{
    NumberField K(P({-2, 0, 0, 1}));
    CHECK(K.norm(K.gen()) == 2);
    CHECK(K.norm(K.from_rational(7)) == 343);
    CHECK(K.trace(K.gen()) == 0);

    // eps = z - 1 has norm 1 and the embedded values multiply to 1
    FieldElement eps = fe(K, {-1, 1, 0});
    CHECK(K.norm(eps) == 1);
    BigComplex prod = BigComplex::from_long(1, ctx.bits());
    for (int j = 0; j < 3; j++) prod *= K.embed(eps, j, ctx.bits());
    CHECK(dist10(prod, BigComplex::from_long(1, ctx.bits())) < -40);

    std::mt19937 rng(5);
    std::uniform_int_distribution<long> d(-9, 9);
    for (int trial = 0; trial < 10; trial++) {
        FieldElement a = fe(K, {d(rng), d(rng), d(rng)});
        FieldElement b = fe(K, {d(rng), d(rng), d(rng)});
        CHECK(K.norm(K.mul(a, b)) == K.norm(a) * K.norm(b));
        // embedding is a ring homomorphism
        BigComplex ea = K.embed_complex(a, ctx.bits());
        BigComplex eb = K.embed_complex(b, ctx.bits());
        BigComplex eab = K.embed_complex(K.mul(a, b), ctx.bits());
        CHECK(dist10(eab, ea * eb) - std::max(0.0, eab.log10_abs()) < -(double)(ctx.digits() - 10));
        // norm equals the product over all embeddings
        BigComplex np = BigComplex::from_long(1, ctx.bits());
        for (int j = 0; j < 3; j++) np *= K.embed(a, j, ctx.bits());
        BigComplex nr = BigComplex::from_mpq(K.norm(a), ctx.bits());
        CHECK(dist10(np, nr) - std::max(0.0, nr.log10_abs()) < -(double)(ctx.digits() - 10));
    }
}

TEST_CASE("field arithmetic")
{
    NumberField K(P({-2, 0, 0, 1}));
    FieldElement eps = fe(K, {-1, 1, 0});
    FieldElement inv = K.inv(eps);
    // (z-1)^{-1} = z^2 + z + 1
    CHECK(inv.c[0] == 1);
    CHECK(inv.c[1] == 1);
    CHECK(inv.c[2] == 1);
    CHECK(K.mul(eps, inv).c[0] == 1);
    CHECK(K.pow(eps, -3).c == K.pow(inv, 3).c);
    CHECK_THROWS_AS((void)K.inv(K.zero()), domain_error);
}

TEST_CASE("orientation basics")
{
    NumberField K(P({-2, 0, 0, 1}));
    std::vector<FieldElement> basis{K.one(), K.gen(), K.mul(K.gen(), K.gen())};
    int s1 = K.orientation(basis, ctx.bits());
    int s2 = K.orientation(basis, PrecisionContext(120).bits());
    CHECK(s1 == s2); // stable under precision raising

    std::vector<FieldElement> swapped{K.gen(), K.one(), K.mul(K.gen(), K.gen())};
    CHECK(K.orientation(swapped, ctx.bits()) == -s1);

    std::vector<FieldElement> scaled = basis;
    scaled[1] = K.mul_scalar(scaled[1], mpq_class(7, 3));
    CHECK(K.orientation(scaled, ctx.bits()) == s1);
}

TEST_CASE("module operations over x^3 - 2")
{
    NumberField K(P({-2, 0, 0, 1}));
    ZModuleBasis OK{{K.one(), K.gen(), K.mul(K.gen(), K.gen())}, ZModuleBasis::Role::ring_of_integers};
    // L = (z+1) O_K, the ramified prime above 3
    FieldElement gen = fe(K, {1, 1, 0});
    ZModuleBasis L{{gen, K.mul(gen, K.gen()), K.mul(gen, K.mul(K.gen(), K.gen()))},
                   ZModuleBasis::Role::fractional_ideal};

    CHECK(module_contains(K, gen, L));
    CHECK(module_norm(K, L, OK) == 3);
    CHECK(module_contains(K, K.from_rational(3), L));
    CHECK_FALSE(module_contains(K, K.one(), L));

    // index [L : 2L] = 2^3
    ZModuleBasis L2{{K.mul_scalar(L.basis[0], 2), K.mul_scalar(L.basis[1], 2),
                     K.mul_scalar(L.basis[2], 2)},
                    ZModuleBasis::Role::sublattice};
    CHECK(module_index(K, L2, L) == 8);

    // membership coordinates of a basis vector form a unit vector
    std::vector<mpq_class> co = module_coords(K, L.basis[1], L);
    CHECK(co[0] == 0);
    CHECK(co[1] == 1);
    CHECK(co[2] == 0);

    auto [m, hp] = primitive_part(K, K.mul_scalar(L.basis[2], 6), L);
    CHECK(m == 6);
    CHECK(hp.c == L.basis[2].c);
    // content is taken over the L-coordinates, not the power-basis ones:
    // 3 + 6z - 3z^2 has L-coordinates (7, -1, -2)
    auto [m2, hp2] = primitive_part(K, fe(K, {3, 6, -3}), L);
    CHECK(m2 == 1);
    (void)hp2;
    CHECK_THROWS_AS((void)primitive_part(K, K.zero(), L), domain_error);

    // idempotent on the primitive part
    auto [m3, hp3] = primitive_part(K, hp, L);
    CHECK(m3 == 1);
    CHECK(hp3.c == hp.c);
}

TEST_CASE("admissible vectors for the x^3 - 2 data")
{
    NumberField K(P({-2, 0, 0, 1}));
    ZModuleBasis OK{{K.one(), K.gen(), K.mul(K.gen(), K.gen())}, ZModuleBasis::Role::ring_of_integers};
    FieldElement gen = fe(K, {1, 1, 0});
    ZModuleBasis L{{gen, K.mul(gen, K.gen()), K.mul(gen, K.mul(K.gen(), K.gen()))},
                   ZModuleBasis::Role::fractional_ideal};
    // a^-1 L for the degree-one prime a = (5, z-3): a^-1 = a^c / 5
    // basis computed offline: a^-1 L has Z-basis (z+1)/5 * {5, z+2, z^2+3z+9... }
    // use the characterization instead: a^-1 L = { x : x a in L } via the
    // explicit generators a = (5, z - 3)
    FieldElement zm3 = fe(K, {-3, 1, 0});
    // build a^-1 L from L by solving for the lattice of x with 5x in L and (z-3)x in L
    // here we just verify admissibility of the known h against a fixture-style basis
    // h = -3z^2 + 6z + 3
    FieldElement h = fe(K, {3, 6, -3});
    // h/q - 1 in L with q = 3
    FieldElement hq = K.mul_scalar(h, mpq_class(1, 3));
    CHECK(module_contains(K, K.sub(hq, K.one()), L));
    // h/N * a in L and h/N not in L for N = 5
    FieldElement hN = K.mul_scalar(h, mpq_class(1, 5));
    CHECK_FALSE(module_contains(K, hN, L));
    CHECK(module_contains(K, K.mul_scalar(hN, 5), L));
    CHECK(module_contains(K, K.mul(hN, zm3), L));
}

TEST_CASE("root refinement residuals stay small")
{
    for (auto poly : {P({-2, 0, 0, 1}), P({1, -3, 0, 0, 1}), P({1, 1, -2, -1, -1, 1})}) {
        NumberField K(poly);
        mpfr_prec_t bits = PrecisionContext(80).bits();
        for (const auto& root : K.roots(bits)) {
            poly::Rat pr(poly.size());
            for (size_t i = 0; i < poly.size(); i++) pr[i] = mpq_class(poly[i]);
            CHECK(poly::eval(pr, root).log10_abs() < -75);
        }
    }
    // imaginary quadratic is the degree-2 case with no real embedding
    NumberField Q3(P({1, 1, 1}));
    BigComplex zeta = Q3.embed_complex(Q3.gen(), PrecisionContext(40).bits());
    CHECK((zeta.re() + BigFloat::from_mpq(mpq_class(1, 2), zeta.prec())).log10_abs() < -35);
    // totally real cubics are rejected
    CHECK_THROWS_AS(NumberField(P({1, -3, 0, 1})).roots(64), domain_error);
}

#include "doctest.h"

#include <random>

#include "ellgr/bernoulli.hpp"

using namespace ellgr;

namespace {

PrecisionContext ctx(40);

BigComplex cplx(double re, double im)
{
    return {BigFloat::from_double(re, ctx.bits()), BigFloat::from_double(im, ctx.bits())};
}

BigComplex rnd_nonzero(std::mt19937& rng)
{
    std::uniform_real_distribution<double> d(-3, 3);
    for (;;) {
        double re = d(rng), im = d(rng);
        if (re * re + im * im > 0.05) return cplx(re, im);
    }
}

double dist10(const BigComplex& a, const BigComplex& b)
{
    return (a - b).log10_abs();
}

// independent oracle: the defining recurrence sum_{k<m} C(m+1,k) B_k = -(m+1) B_m
mpq_class bern_oracle(unsigned m)
{
    std::vector<mpq_class> b(m + 1);
    b[0] = 1;
    for (unsigned i = 1; i <= m; i++) {
        mpq_class acc(0);
        mpz_class bin(1);
        for (unsigned k = 0; k < i; k++) {
            acc += mpq_class(bin) * b[k];
            bin *= (long)(i + 1 - k);
            bin /= (long)(k + 1);
        }
        b[i] = -acc / mpq_class(bin);
        b[i].canonicalize();
    }
    return b[m];
}

// classical Bernoulli polynomial B_n(z) by the binomial expansion
BigComplex classical_bernoulli_poly(unsigned n, const BigComplex& z)
{
    BigComplex acc(ctx.bits());
    for (unsigned k = 0; k <= n; k++) {
        mpz_class bin;
        mpz_bin_uiui(bin.get_mpz_t(), n, k);
        mpq_class c = mpq_class(bin) * bern_oracle(k);
        acc += BigComplex::from_mpq(c, ctx.bits()) * pow_int(z, (long)(n - k));
    }
    return acc;
}

} // namespace

TEST_CASE("bernoulli numbers")
{
    CHECK(bernoulli_number(0) == 1);
    CHECK(bernoulli_number(1) == mpq_class(-1, 2));
    CHECK(bernoulli_number(12) == mpq_class(-691, 2730));
    for (unsigned k = 0; k <= 20; k++) CHECK(bernoulli_number(k) == bern_oracle(k));
}

TEST_CASE("B*_{2,2} closed form")
{
    std::mt19937 rng(3);
    for (int i = 0; i < 20; i++) {
        BigComplex z = rnd_nonzero(rng), w1 = rnd_nonzero(rng), w2 = rnd_nonzero(rng);
        BigComplex got = multi_bernoulli_star(2, 2, z, {w1, w2});
        BigComplex expect = z * z - z * (w1 + w2) +
                            (w1 * w1 + w2 * w2 + BigComplex::from_long(3, ctx.bits()) * w1 * w2) *
                                BigComplex::from_mpq(mpq_class(1, 6), ctx.bits());
        CHECK(dist10(got, expect) < -30);
    }
}

TEST_CASE("degree zero and classical specializations")
{
    std::mt19937 rng(5);
    BigComplex z = rnd_nonzero(rng);
    CHECK(dist10(multi_bernoulli_star(3, 0, z, {rnd_nonzero(rng), rnd_nonzero(rng), rnd_nonzero(rng)}),
                 BigComplex::from_long(1, ctx.bits())) < -35);

    // d = 1, omega = 1 gives the classical polynomials; B_3(0) = 0
    BigComplex one = BigComplex::from_long(1, ctx.bits());
    CHECK(multi_bernoulli_star(1, 3, BigComplex(ctx.bits()), {one}).log10_abs() < -35);
    // B_{1,1}(z, 1) = z - 1/2
    BigComplex b11 = multi_bernoulli(1, 1, z, {one});
    CHECK(dist10(b11, z - BigComplex::from_mpq(mpq_class(1, 2), ctx.bits())) < -35);
    for (unsigned n = 1; n <= 6; n++)
        CHECK(dist10(multi_bernoulli_star(1, n, z, {one}), classical_bernoulli_poly(n, z)) < -30);
}

TEST_CASE("rescaled value at the origin")
{
    BigComplex one = BigComplex::from_long(1, ctx.bits());
    BigComplex v = multi_bernoulli(2, 2, BigComplex(ctx.bits()), {one, one});
    CHECK(dist10(v, BigComplex::from_mpq(mpq_class(5, 6), ctx.bits())) < -35);
}

TEST_CASE("stated properties of the rescaled polynomials")
{
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> dd(1, 4), dn(0, 6);
    for (int trial = 0; trial < 50; trial++) {
        unsigned d = (unsigned)dd(rng);
        unsigned n = (unsigned)dn(rng);
        BigComplex z = rnd_nonzero(rng);
        std::vector<BigComplex> w;
        BigComplex wsum(ctx.bits());
        for (unsigned j = 0; j < d; j++) {
            w.push_back(rnd_nonzero(rng));
            wsum += w.back();
        }
        BigComplex base = multi_bernoulli(d, n, z, w);

        // homogeneity: B(a z, a w) = a^{n-d} B(z, w)
        BigComplex a = rnd_nonzero(rng);
        std::vector<BigComplex> wa;
        for (const auto& x : w) wa.push_back(x * a);
        CHECK(dist10(multi_bernoulli(d, n, z * a, wa), base * pow_int(a, (long)n - (long)d)) < -25);

        // reflection: B(z + |w|, w) = (-1)^n B(-z, w)
        BigComplex refl = multi_bernoulli(d, n, z + wsum, w);
        BigComplex rhs = multi_bernoulli(d, n, -z, w);
        if (n & 1) rhs = -rhs;
        CHECK(dist10(refl, rhs) < -25);

        // shift: B(z + w_j, w) = B(z, w) + n B_{d-1,n-1}(z, w minus j)
        if (d >= 2) {
            size_t j = (size_t)(trial % (int)d);
            std::vector<BigComplex> wm;
            for (size_t k = 0; k < w.size(); k++)
                if (k != j) wm.push_back(w[k]);
            BigComplex lhs = multi_bernoulli(d, n, z + w[j], w);
            BigComplex corr(ctx.bits());
            if (n >= 1)
                corr = multi_bernoulli(d - 1, n - 1, z, wm) * BigComplex::from_long((long)n, ctx.bits());
            CHECK(dist10(lhs, base + corr) < -25);

            // sign flip: B(z + w_j, w) = -B(z, w[j])
            std::vector<BigComplex> wflip = w;
            wflip[j] = -wflip[j];
            CHECK(dist10(lhs, -multi_bernoulli(d, n, z, wflip)) < -25);
        }

        // derivative against central differences at step ~1e-13
        if (n >= 1) {
            BigComplex h = BigComplex::from_mpq(mpq_class(1, 10000000000000L), ctx.bits());
            BigComplex diff = (multi_bernoulli(d, n, z + h, w) - multi_bernoulli(d, n, z - h, w)) /
                              (h + h);
            BigComplex expct = multi_bernoulli(d, n - 1, z, w) * BigComplex::from_long((long)n, ctx.bits());
            CHECK(dist10(diff, expct) < -9);
        }

        // symmetry in the omegas
        if (d >= 2) {
            std::vector<BigComplex> wsw = w;
            std::swap(wsw[0], wsw[d - 1]);
            CHECK(dist10(multi_bernoulli_star(d, n, z, wsw), multi_bernoulli_star(d, n, z, w)) < -25);
        }
    }
}

#include "doctest.h"

#include <random>

#include "ellgr/ellgamma.hpp"

using namespace ellgr;

namespace {

PrecisionContext ctx(40);

BigComplex cplx(double re, double im, mpfr_prec_t p = 0)
{
    if (p == 0) p = ctx.bits();
    return {BigFloat::from_double(re, p), BigFloat::from_double(im, p)};
}

double dist10(const BigComplex& a, const BigComplex& b)
{
    return (a - b).log10_abs();
}

// direct truncation of the defining (r+1)-fold product, the independent oracle
BigComplex gr_product_oracle(int r, const BigComplex& z, const std::vector<BigComplex>& taus,
                             int M)
{
    mpfr_prec_t p = ctx.bits();
    BigComplex x = e2pi(z);
    BigComplex xinv = reciprocal(x);
    std::vector<BigComplex> q;
    for (const auto& t : taus) q.push_back(e2pi(t));

    BigComplex prod = BigComplex::from_long(1, p);
    std::vector<int> m((size_t)r + 1, 0);
    for (;;) {
        BigComplex qa = BigComplex::from_long(1, p);
        BigComplex qb = BigComplex::from_long(1, p);
        for (size_t k = 0; k < q.size(); k++) {
            qa *= pow_int(q[k], m[k] + 1);
            qb *= pow_int(q[k], m[k]);
        }
        BigComplex one = BigComplex::from_long(1, p);
        BigComplex f1 = one - qa * xinv;
        BigComplex f2 = one - qb * x;
        prod *= f1;
        prod = (r % 2 == 0) ? prod * f2 : prod / f2;
        int pos = 0;
        while (pos <= r) {
            m[(size_t)pos]++;
            if (m[(size_t)pos] <= M) break;
            m[(size_t)pos] = 0;
            pos++;
        }
        if (pos > r) break;
    }
    return prod;
}

} // namespace

TEST_CASE("theta basics")
{
    mpfr_prec_t p = ctx.bits();
    BigComplex i_tau = cplx(0, 1);
    CHECK(theta(BigComplex(p), i_tau, ctx).log10_abs() < -38);

    std::mt19937 rng(21);
    std::uniform_real_distribution<double> d(-2, 2);
    for (int k = 0; k < 10; k++) {
        BigComplex z = cplx(d(rng), d(rng) * 0.3);
        BigComplex a = theta(z, i_tau, ctx);
        BigComplex b = theta(z + BigComplex::from_long(1, p), i_tau, ctx);
        CHECK(dist10(a, b) - a.log10_abs() < -35);
    }
}

TEST_CASE("theta against the double product")
{
    BigComplex z = BigComplex::from_mpq(mpq_class(1, 3), ctx.bits());
    BigComplex tau = cplx(0, 1);
    BigComplex got = theta(z, tau, ctx);
    BigComplex oracle = gr_product_oracle(0, z, {tau}, 200);
    CHECK(dist10(got, oracle) < -38);
}

TEST_CASE("center strip equals theta for r = 0")
{
    BigComplex z = cplx(1.0 / 3.0, 0.45);
    BigComplex tau = cplx(0.1, 1.0);
    CHECK(dist10(gr_center_strip(0, z, {tau}, ctx), theta(z, tau, ctx)) < -35);
    CHECK_THROWS_AS((void)gr_center_strip(0, cplx(0.3, -0.2), {tau}, ctx), domain_error);
}

TEST_CASE("gr against the direct product, r = 1 and r = 2")
{
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> re(-0.8, 0.8), im(0.5, 1.4);
    for (int trial = 0; trial < 6; trial++) {
        std::vector<BigComplex> taus1{cplx(re(rng), im(rng)), cplx(re(rng), im(rng))};
        BigComplex z = cplx(re(rng), im(rng) * 0.4);
        CHECK(dist10(gr(1, z, taus1, ctx), gr_product_oracle(1, z, taus1, 44)) < -30);

        std::vector<BigComplex> taus2{cplx(re(rng), im(rng)), cplx(re(rng), im(rng)),
                                      cplx(re(rng), im(rng))};
        CHECK(dist10(gr(2, z, taus2, ctx), gr_product_oracle(2, z, taus2, 36)) < -30);
    }
}

TEST_CASE("gr symmetry, periodicity, reflection, shift, inversion")
{
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> re(-0.6, 0.6), im(0.35, 1.0);
    mpfr_prec_t p = ctx.bits();
    for (int trial = 0; trial < 5; trial++) {
        std::vector<BigComplex> taus{cplx(re(rng), im(rng)), cplx(re(rng), im(rng)),
                                     cplx(re(rng), im(rng))};
        BigComplex tsum = taus[0] + taus[1] + taus[2];
        BigComplex z = cplx(re(rng), im(rng) * 0.5);
        BigComplex base = gr(2, z, taus, ctx);

        std::vector<BigComplex> perm{taus[2], taus[0], taus[1]};
        CHECK(dist10(gr(2, z, perm, ctx), base) < -32);

        CHECK(dist10(gr(2, z + BigComplex::from_long(1, p), taus, ctx), base) < -32);

        // reflection: G_r(z + |tau|) = G_r(-z)^{(-1)^r}
        CHECK(dist10(gr(2, z + tsum, taus, ctx), gr(2, -z, taus, ctx)) < -30);

        // total inversion: G_r(-z, -tau) G_r(z, tau) = 1
        std::vector<BigComplex> neg{-taus[0], -taus[1], -taus[2]};
        CHECK(dist10(gr(2, -z, neg, ctx) * base, BigComplex::from_long(1, p)) < -30);

        // shift: G_r(z + tau_j) = G_{r-1}(z, tau minus j) G_r(z)
        std::vector<BigComplex> minus0{taus[1], taus[2]};
        CHECK(dist10(gr(2, z + taus[0], taus, ctx), gr(1, z, minus0, ctx) * base) < -30);
    }
}

TEST_CASE("exponential sum form agrees in its strip")
{
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.4, 0.9);
    for (int trial = 0; trial < 4; trial++) {
        std::vector<BigComplex> taus{cplx(re(rng), im(rng)), cplx(re(rng), im(rng))};
        BigComplex half_sum = (taus[0] + taus[1]) * BigComplex::from_mpq(mpq_class(1, 2), ctx.bits());
        BigComplex z = half_sum + cplx(re(rng) * 0.3, im(rng) * 0.1);
        CHECK(dist10(gr_exponential_sum(1, z, taus, ctx), gr(1, z, taus, ctx)) < -30);
    }
}

TEST_CASE("modular identity residual for r = 0, 1, 2")
{
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> re(-1.2, 1.2), im(0.4, 1.3);
    for (int r = 0; r <= 2; r++) {
        for (int trial = 0; trial < 3; trial++) {
            std::vector<BigComplex> omegas;
            omegas.push_back(BigComplex::from_long(1, ctx.bits()));
            for (int j = 1; j < r + 2; j++) omegas.push_back(cplx(re(rng), im(rng)));
            BigComplex z = cplx(re(rng) * 0.4 + 0.3, im(rng) * 0.4);
            BigFloat res = modular_identity_residual(r, z, omegas, ctx);
            CHECK(res.log10_abs() < -(double)(ctx.digits() - 10));
        }
    }
}

TEST_CASE("explicit Felder-Varchenko comparison for r = 1")
{
    // product over the three scaled evaluations equals exp(i pi P_1) with
    // P_1(z,t,s) = z^3/(3ts) - (t+s-1)z^2/(2ts) + (t^2+s^2+3ts-3t-3s+1)z/(6ts)
    //            + (t+s-1)(1/t+1/s-1)/12
    mpfr_prec_t p = ctx.bits();
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> re(-0.6, 0.6), im(0.5, 1.1);
    for (int trial = 0; trial < 3; trial++) {
        BigComplex tau = cplx(re(rng), im(rng)), sig = cplx(re(rng), im(rng));
        BigComplex z = cplx(re(rng) * 0.5 + 0.2, im(rng) * 0.3);
        BigComplex ti = reciprocal(tau), si = reciprocal(sig);

        BigComplex lhs = reciprocal(gr(1, z, {tau, sig}, ctx));
        lhs *= gr(1, z * ti, {-ti, sig * ti}, ctx);
        lhs *= reciprocal(gr(1, (z - tau) * si, {-tau * si, -si}, ctx));

        BigComplex ts = tau * sig;
        BigComplex tsinv = reciprocal(ts);
        BigComplex one = BigComplex::from_long(1, p);
        BigComplex p1 = pow_int(z, 3) * tsinv * BigComplex::from_mpq(mpq_class(1, 3), p);
        p1 = p1 - z * z * (tau + sig - one) * tsinv * BigComplex::from_mpq(mpq_class(1, 2), p);
        p1 = p1 + z * (tau * tau + sig * sig + ts * BigComplex::from_long(3, p) -
                       (tau + sig) * BigComplex::from_long(3, p) + one) *
                      tsinv * BigComplex::from_mpq(mpq_class(1, 6), p);
        p1 = p1 + (tau + sig - one) * (ti + si - one) * BigComplex::from_mpq(mpq_class(1, 12), p);

        // exp(i pi P_1)
        BigFloat pi = BigFloat::pi(p);
        BigComplex ip(-(p1.im() * pi), p1.re() * pi);
        CHECK(dist10(lhs, exp(ip)) < -(double)(ctx.digits() - 10));
    }
}

TEST_CASE("conjugation residual")
{
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> re(-0.8, 0.8), im(0.4, 1.2);
    for (int r = 0; r <= 2; r++) {
        std::vector<BigComplex> taus;
        for (int j = 0; j <= r; j++) taus.push_back(cplx(re(rng), im(rng)));
        BigComplex z = cplx(re(rng), im(rng) * 0.4);
        CHECK(conjugation_residual(r, z, taus, ctx).log10_abs() < -(double)(ctx.digits() - 10));
    }
}

TEST_CASE("negative imaginary periods and real-tau rejection")
{
    std::vector<BigComplex> taus{cplx(0.2, 0.8), cplx(-0.1, -0.7)};
    BigComplex z = cplx(0.3, 0.2);
    // G_r(z, tau[j]) = G_r(z + tau_j, tau)^{-1}
    std::vector<BigComplex> flipped{taus[0], -taus[1]};
    BigComplex lhs = gr(1, z, taus, ctx);
    BigComplex rhs = reciprocal(gr(1, z + flipped[1], flipped, ctx));
    CHECK(dist10(lhs, rhs) < -32);

    CHECK_THROWS_AS((void)gr(1, z, {cplx(0.5, 0.0), cplx(0.1, 0.9)}, ctx), domain_error);
}

TEST_CASE("batched evaluation matches single calls")
{
    std::vector<BigComplex> taus{cplx(0.17, 0.52), cplx(-0.23, 0.74)};
    std::vector<BigComplex> zs{cplx(0.1, 0.3), cplx(-0.4, 0.02), cplx(0.45, 1.1)};
    std::vector<BigComplex> batch = gr_multi(1, zs, taus, ctx, 2);
    for (size_t i = 0; i < zs.size(); i++)
        CHECK(dist10(batch[i], gr(1, zs[i], taus, ctx)) < -35);
}

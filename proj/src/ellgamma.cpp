#include "ellgr/ellgamma.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace ellgr {

namespace {

double pole_threshold_log10(const PrecisionContext& ctx)
{
    return -(double)ctx.digits() / 2.0;
}

BigComplex checked_div(const BigComplex& a, const BigComplex& b, const PrecisionContext& ctx,
                       const char* what)
{
    if (b.log10_abs() < pole_threshold_log10(ctx))
        throw pole_error(std::string(what) + ": divisor vanishes, argument is on or near the pole set");
    return a / b;
}

// ---------------------------------------------------------------------------
// raw mpfr complex scratch for the series kernels

struct CVec {
    std::vector<mpfr_t> re, im;
    mpfr_prec_t prec;

    CVec(size_t n, mpfr_prec_t p) : re(n), im(n), prec(p)
    {
        for (size_t i = 0; i < n; i++) { mpfr_init2(re[i], p); mpfr_init2(im[i], p); }
    }
    ~CVec()
    {
        for (size_t i = 0; i < re.size(); i++) { mpfr_clear(re[i]); mpfr_clear(im[i]); }
    }
    CVec(const CVec&) = delete;
    CVec& operator=(const CVec&) = delete;

    void set(size_t i, const BigComplex& v)
    {
        mpfr_set(re[i], v.re().raw(), MPFR_RNDN);
        mpfr_set(im[i], v.im().raw(), MPFR_RNDN);
    }
    BigComplex get(size_t i, mpfr_prec_t out_prec) const
    {
        BigFloat r(out_prec), m(out_prec);
        mpfr_set(r.raw(), re[i], MPFR_RNDN);
        mpfr_set(m.raw(), im[i], MPFR_RNDN);
        return {std::move(r), std::move(m)};
    }
};

struct CTmp {
    mpfr_t t1, t2, t3, t4;
    explicit CTmp(mpfr_prec_t p)
    {
        mpfr_init2(t1, p); mpfr_init2(t2, p); mpfr_init2(t3, p); mpfr_init2(t4, p);
    }
    ~CTmp() { mpfr_clear(t1); mpfr_clear(t2); mpfr_clear(t3); mpfr_clear(t4); }
};

// (ar,ai) *= (br,bi)
inline void cmul(mpfr_t ar, mpfr_t ai, mpfr_srcptr br, mpfr_srcptr bi, CTmp& t)
{
    mpfr_mul(t.t1, ar, br, MPFR_RNDN);
    mpfr_mul(t.t2, ai, bi, MPFR_RNDN);
    mpfr_mul(t.t3, ar, bi, MPFR_RNDN);
    mpfr_mul(t.t4, ai, br, MPFR_RNDN);
    mpfr_sub(ar, t.t1, t.t2, MPFR_RNDN);
    mpfr_add(ai, t.t3, t.t4, MPFR_RNDN);
}

// (rr,ri) = 1 / (br,bi)
inline void crecip(mpfr_t rr, mpfr_t ri, mpfr_srcptr br, mpfr_srcptr bi, CTmp& t)
{
    mpfr_mul(t.t1, br, br, MPFR_RNDN);
    mpfr_mul(t.t2, bi, bi, MPFR_RNDN);
    mpfr_add(t.t1, t.t1, t.t2, MPFR_RNDN); // |b|^2
    mpfr_div(rr, br, t.t1, MPFR_RNDN);
    mpfr_div(ri, bi, t.t1, MPFR_RNDN);
    mpfr_neg(ri, ri, MPFR_RNDN);
}

// ---------------------------------------------------------------------------
// theta via the triple product

std::vector<BigComplex> theta_multi_impl(const std::vector<BigComplex>& zs, const BigComplex& tau,
                                         const PrecisionContext& ctx)
{
    mpfr_prec_t prec = ctx.bits();
    double im_tau = tau.im().to_double();
    if (!(im_tau > 0)) throw domain_error("theta: Im(tau) must be positive");

    double log10_eps = ctx.log10_eps() - 5.0;
    BigComplex q = e2pi(tau);

    // 1 / prod_{n >= 1} (1 - q^n)
    BigComplex prod = BigComplex::from_long(1, prec);
    {
        BigComplex qn = q;
        double lq = q.log10_abs();
        long nmax = (long)(log10_eps / lq) + 2;
        for (long n = 1; n <= nmax; n++) {
            prod *= (BigComplex::from_long(1, prec) - qn);
            if (n < nmax) qn *= q;
        }
    }

    std::vector<BigComplex> out;
    out.reserve(zs.size());
    for (const auto& z0 : zs) {
        // quasi-periodic pre-shift: theta(z + k tau) = (-1)^k e2pi(-(k z + k(k-1)/2 tau)) theta(z)
        BigComplex z = z0;
        long k = std::lround(z.im().to_double() / im_tau);
        BigComplex corr = BigComplex::from_long(1, prec);
        int corr_sign = 1;
        if (k != 0) {
            BigComplex kc = BigComplex::from_long(k, prec);
            z = z - kc * tau;
            BigComplex ex = kc * z + BigComplex::from_mpq(mpq_class(k) * mpq_class(k - 1, 2), prec) * tau;
            corr = e2pi(-ex);
            if (k & 1) corr_sign = -1;
        }
        z.re() = fracpart(z.re());

        BigComplex x = e2pi(z);
        // sum_{n in Z} (-x)^n q^{n(n-1)/2}
        BigComplex sum = BigComplex::from_long(1, prec); // n = 0
        BigComplex minus_x = -x;
        BigComplex term = minus_x;                 // n = 1: (-x) q^0
        BigComplex qpow = BigComplex::from_long(1, prec);
        for (long n = 1;; n++) {
            sum += term;
            // next: multiply by (-x) q^n
            qpow *= q;
            term *= minus_x;
            term *= qpow;
            if (term.log10_abs() < log10_eps && n > 2) break;
            if (n > 100000000) throw error("theta: series failed to converge");
        }
        BigComplex minus_xinv = reciprocal(minus_x);
        term = minus_xinv * q;                     // n = -1: (-x)^{-1} q^1
        BigComplex qm = q;
        for (long m = 1;; m++) {
            sum += term;
            qm *= q;
            term *= minus_xinv;
            term *= qm;
            if (term.log10_abs() < log10_eps && m > 2) break;
            if (m > 100000000) throw error("theta: series failed to converge");
        }

        BigComplex v = sum / prod;
        v = v * corr;
        if (corr_sign < 0) v = -v;
        out.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// center-strip exponential sum, batched over z

struct StripPlan {
    long jmax;
    double decay_ln; // slowest decay rate, nats per step
};

StripPlan plan_strip(const std::vector<BigComplex>& zs, const std::vector<BigComplex>& taus,
                     const PrecisionContext& ctx)
{
    double sum_im = 0;
    double min_im_tau = 1e300;
    for (const auto& t : taus) {
        double v = t.im().to_double();
        if (!(v > 0)) throw domain_error("gr_center_strip: Im(tau_j) must be positive");
        sum_im += v;
        min_im_tau = std::min(min_im_tau, v);
    }
    double m = 1e300;
    for (const auto& z : zs) {
        double iz = z.im().to_double();
        if (!(iz > 0) || !(iz < sum_im))
            throw domain_error("gr_center_strip: z outside the center strip");
        m = std::min(m, std::min(iz, sum_im - iz));
    }
    double rho = 2.0 * M_PI * m;
    // digits to clear: target + first-terms denominator inflation + tail slack,
    // plus margin for sporadic small |1 - q_k^j| at mid-range j
    double need_ln = ((double)(ctx.digits() + ctx.guard_digits()) + 15.0) * 2.302585092994046;
    for (const auto& t : taus) {
        double a = 2.0 * M_PI * t.im().to_double();
        // -ln(1 - e^-a), the j = 1 denominator factor
        need_ln += -std::log1p(-std::exp(-a));
    }
    need_ln += std::log(1.0 / (1.0 - std::exp(-rho)) + 1.0);
    StripPlan p;
    p.decay_ln = rho;
    p.jmax = (long)std::ceil(need_ln / rho) + 4;
    return p;
}

// Partial sums of the series over a j-block, at reduced precision once the
// terms have decayed.  Combination order of blocks is fixed by the caller, so
// results do not depend on the thread count.
void strip_block(int r, long j0, long j1, mpfr_prec_t prec,
                 const std::vector<BigComplex>& taus, const BigComplex& tau_sum,
                 const std::vector<BigComplex>& zs,
                 std::vector<BigComplex>& out_partial /* size nz, prec */)
{
    size_t nt = taus.size(), nz = zs.size();
    CTmp t(prec);
    CVec pw(nt, prec), step_pw(nt, prec);
    CVec u(nz, prec), v(nz, prec), step_u(nz, prec), step_v(nz, prec);
    CVec acc(nz, prec);
    mpfr_t den_r, den_i, rec_r, rec_i, num_r, num_i, tr, ti;
    mpfr_inits2(prec, den_r, den_i, rec_r, rec_i, num_r, num_i, tr, ti, (mpfr_ptr)nullptr);

    for (size_t k = 0; k < nt; k++) {
        pw.set(k, e2pi_times(j0, taus[k]));
        step_pw.set(k, e2pi(taus[k]));
    }
    for (size_t i = 0; i < nz; i++) {
        BigComplex wu = tau_sum - zs[i];
        u.set(i, e2pi_times(j0, wu));
        step_u.set(i, e2pi(wu));
        v.set(i, e2pi_times(j0, zs[i]));
        step_v.set(i, e2pi(zs[i]));
        mpfr_set_zero(acc.re[i], 1);
        mpfr_set_zero(acc.im[i], 1);
    }

    bool odd = (r & 1) != 0;
    for (long j = j0; j < j1; j++) {
        // denominator prod_k (1 - q_k^j)
        mpfr_set_si(den_r, 1, MPFR_RNDN);
        mpfr_set_zero(den_i, 1);
        for (size_t k = 0; k < nt; k++) {
            mpfr_si_sub(tr, 1, pw.re[k], MPFR_RNDN);
            mpfr_neg(ti, pw.im[k], MPFR_RNDN);
            cmul(den_r, den_i, tr, ti, t);
        }
        crecip(rec_r, rec_i, den_r, den_i, t);
        mpfr_div_si(rec_r, rec_r, j, MPFR_RNDN);
        mpfr_div_si(rec_i, rec_i, j, MPFR_RNDN);

        for (size_t i = 0; i < nz; i++) {
            if (odd) {
                mpfr_sub(num_r, u.re[i], v.re[i], MPFR_RNDN);
                mpfr_sub(num_i, u.im[i], v.im[i], MPFR_RNDN);
            } else {
                mpfr_add(num_r, u.re[i], v.re[i], MPFR_RNDN);
                mpfr_add(num_i, u.im[i], v.im[i], MPFR_RNDN);
            }
            cmul(num_r, num_i, rec_r, rec_i, t);
            mpfr_add(acc.re[i], acc.re[i], num_r, MPFR_RNDN);
            mpfr_add(acc.im[i], acc.im[i], num_i, MPFR_RNDN);
        }
        if (j + 1 < j1) {
            for (size_t k = 0; k < nt; k++) cmul(pw.re[k], pw.im[k], step_pw.re[k], step_pw.im[k], t);
            for (size_t i = 0; i < nz; i++) {
                cmul(u.re[i], u.im[i], step_u.re[i], step_u.im[i], t);
                cmul(v.re[i], v.im[i], step_v.re[i], step_v.im[i], t);
            }
        }
    }

    for (size_t i = 0; i < nz; i++) out_partial[i] = acc.get(i, prec);
    mpfr_clears(den_r, den_i, rec_r, rec_i, num_r, num_i, tr, ti, (mpfr_ptr)nullptr);
}

std::vector<BigComplex> gr_center_strip_multi(int r, const std::vector<BigComplex>& zs,
                                              const std::vector<BigComplex>& taus,
                                              const PrecisionContext& ctx, int threads)
{
    if ((int)taus.size() != r + 1)
        throw domain_error("gr_center_strip: need r+1 periods");
    StripPlan plan = plan_strip(zs, taus, ctx);
    mpfr_prec_t full = ctx.bits() + 32;

    // re-round inputs once at kernel precision
    std::vector<BigComplex> tk, zk;
    BigComplex tau_sum(full);
    for (const auto& tau : taus) {
        BigComplex w{BigFloat(full), BigFloat(full)};
        mpfr_set(w.re().raw(), tau.re().raw(), MPFR_RNDN);
        mpfr_set(w.im().raw(), tau.im().raw(), MPFR_RNDN);
        tau_sum += w;
        tk.push_back(std::move(w));
    }
    for (const auto& z : zs) {
        BigComplex w{BigFloat(full), BigFloat(full)};
        mpfr_set(w.re().raw(), z.re().raw(), MPFR_RNDN);
        mpfr_set(w.im().raw(), z.im().raw(), MPFR_RNDN);
        zk.push_back(std::move(w));
    }

    const long block = 8192;
    long nblocks = (plan.jmax + block - 1) / block;
    std::vector<std::vector<BigComplex>> partial((size_t)nblocks);

    double bits_per_j = plan.decay_ln / 0.6931471805599453;
    auto block_prec = [&](long b) -> mpfr_prec_t {
        double decayed = bits_per_j * (double)(b * block);
        double p = (double)full - decayed + 48.0;
        return (mpfr_prec_t)std::max(64.0, p);
    };

    auto run = [&](long b) {
        long j0 = 1 + b * block;
        long j1 = std::min(plan.jmax + 1, j0 + block);
        std::vector<BigComplex> acc(zs.size());
        strip_block(r, j0, j1, block_prec(b), tk, tau_sum, zk, acc);
        partial[(size_t)b] = std::move(acc);
    };

    int nthreads = std::max(1, std::min<int>(threads, (int)nblocks));
    if (nthreads == 1) {
        for (long b = 0; b < nblocks; b++) run(b);
    } else {
        std::vector<std::thread> pool;
        std::atomic<long> next{0};
        for (int w = 0; w < nthreads; w++)
            pool.emplace_back([&]() {
                for (;;) {
                    long b = next.fetch_add(1);
                    if (b >= nblocks) return;
                    run(b);
                }
            });
        for (auto& th : pool) th.join();
    }

    std::vector<BigComplex> out;
    out.reserve(zs.size());
    for (size_t i = 0; i < zs.size(); i++) {
        BigComplex s(full);
        for (long b = 0; b < nblocks; b++) s += partial[(size_t)b][i];
        // G_r = exp(-S), rounded back to the context precision
        BigComplex g = exp(-s);
        BigComplex res(BigFloat(ctx.bits()), BigFloat(ctx.bits()));
        mpfr_set(res.re().raw(), g.re().raw(), MPFR_RNDN);
        mpfr_set(res.im().raw(), g.im().raw(), MPFR_RNDN);
        out.push_back(std::move(res));
    }
    return out;
}

} // namespace

BigComplex theta(const BigComplex& z, const BigComplex& tau, const PrecisionContext& ctx)
{
    return theta_multi_impl({z}, tau, ctx)[0];
}

std::vector<BigComplex> theta_multi(const std::vector<BigComplex>& zs, const BigComplex& tau,
                                    const PrecisionContext& ctx)
{
    return theta_multi_impl(zs, tau, ctx);
}

BigComplex gr_center_strip(int r, const BigComplex& z, const std::vector<BigComplex>& taus,
                           const PrecisionContext& ctx)
{
    return gr_center_strip_multi(r, {z}, taus, ctx, 1)[0];
}

std::vector<BigComplex> gr_multi(int r, std::vector<BigComplex> zs, std::vector<BigComplex> taus,
                                 const PrecisionContext& ctx, int threads)
{
    if (r < 0) throw domain_error("gr: r must be non-negative");
    if ((int)taus.size() != r + 1) throw domain_error("gr: need r+1 periods");
    mpfr_prec_t prec = ctx.bits();
    double real_tol = -(double)ctx.digits() / 2.0;

    // extend the parameter range: flip periods into the upper half-plane
    int inversions = 0;
    BigComplex flip_shift(prec);
    bool any_flip = false;
    for (auto& tau : taus) {
        double mag = tau.log10_abs();
        if (tau.im().log10_abs() < real_tol + std::max(0.0, mag))
            throw domain_error("gr: tau_j too close to the real axis");
        if (tau.im().sign() < 0) {
            tau = -tau;
            flip_shift += tau;
            inversions++;
            any_flip = true;
        }
    }
    if (any_flip)
        for (auto& z : zs) z += flip_shift;

    size_t nz = zs.size();
    std::vector<BigComplex> num(nz), den(nz);
    for (size_t i = 0; i < nz; i++) {
        num[i] = BigComplex::from_long(1, prec);
        den[i] = BigComplex::from_long(1, prec);
        zs[i].re() = fracpart(zs[i].re());
    }

    if (r == 0) {
        std::vector<BigComplex> th = theta_multi(zs, taus[0], ctx);
        if (inversions & 1)
            for (auto& v : th)
                v = checked_div(BigComplex::from_long(1, prec), v, ctx, "gr");
        return th;
    }

    double sum_im = 0, max_im = -1;
    int kmax = 0;
    std::vector<double> imt(taus.size());
    for (size_t k = 0; k < taus.size(); k++) {
        imt[k] = taus[k].im().to_double();
        sum_im += imt[k];
        if (imt[k] > max_im) { max_im = imt[k]; kmax = (int)k; }
    }
    // single-shift choice: land as close to the middle of the strip as possible
    auto pick_shift_up = [&](double iz) {
        if (iz + max_im <= 0) return kmax; // deep below: biggest step first
        int best = kmax;
        double bestm = -1;
        for (size_t k = 0; k < taus.size(); k++) {
            double land = iz + imt[k];
            if (land <= 0 || land >= sum_im) continue;
            double m = std::min(land, sum_im - land);
            if (m > bestm) { bestm = m; best = (int)k; }
        }
        return best;
    };

    // plan the walk per z; corrections grouped by dropped period
    std::vector<std::vector<BigComplex>> corr_up(taus.size()), corr_dn(taus.size());
    std::vector<std::vector<size_t>> corr_up_idx(taus.size()), corr_dn_idx(taus.size());
    std::vector<BigComplex> reduced(nz);
    for (size_t i = 0; i < nz; i++) {
        BigComplex z = zs[i];
        for (int guard = 0;; guard++) {
            if (guard > 10000) throw error("gr: reduction failed to terminate");
            double iz = z.im().to_double();
            if (iz > 0 && iz < sum_im) break;
            if (iz <= 0) {
                int k = pick_shift_up(iz);
                // G_r(z) = G_r(z + tau_k) / G_{r-1}(z, taus w/o k)
                corr_dn[k].push_back(z);
                corr_dn_idx[k].push_back(i);
                z += taus[(size_t)k];
            } else {
                int k = kmax;
                // G_r(z) = G_{r-1}(z - tau_k, taus w/o k) * G_r(z - tau_k)
                z = z - taus[(size_t)k];
                corr_up[k].push_back(z);
                corr_up_idx[k].push_back(i);
            }
        }
        reduced[i] = z;
    }

    for (size_t k = 0; k < taus.size(); k++) {
        if (corr_up[k].empty() && corr_dn[k].empty()) continue;
        std::vector<BigComplex> sub = taus;
        sub.erase(sub.begin() + (long)k);
        if (!corr_up[k].empty()) {
            std::vector<BigComplex> vals = gr_multi(r - 1, corr_up[k], sub, ctx, threads);
            for (size_t m = 0; m < vals.size(); m++) num[corr_up_idx[k][m]] *= vals[m];
        }
        if (!corr_dn[k].empty()) {
            std::vector<BigComplex> vals = gr_multi(r - 1, corr_dn[k], sub, ctx, threads);
            for (size_t m = 0; m < vals.size(); m++) den[corr_dn_idx[k][m]] *= vals[m];
        }
    }

    std::vector<BigComplex> strip = gr_center_strip_multi(r, reduced, taus, ctx, threads);
    std::vector<BigComplex> out(nz);
    for (size_t i = 0; i < nz; i++) {
        BigComplex v = strip[i] * num[i];
        v = checked_div(v, den[i], ctx, "gr");
        if (inversions & 1) v = checked_div(BigComplex::from_long(1, prec), v, ctx, "gr");
        out[i] = std::move(v);
    }
    return out;
}

BigComplex gr(int r, const BigComplex& z, const std::vector<BigComplex>& taus,
              const PrecisionContext& ctx, int threads)
{
    return gr_multi(r, {z}, taus, ctx, threads)[0];
}

BigFloat modular_identity_residual(int r, const BigComplex& z,
                                   const std::vector<BigComplex>& omegas,
                                   const PrecisionContext& ctx)
{
    if ((int)omegas.size() != r + 2)
        throw domain_error("modular_identity_residual: need r+2 periods");
    mpfr_prec_t prec = ctx.bits();
    BigComplex prod = BigComplex::from_long(1, prec);
    for (int j = 0; j <= r + 1; j++) {
        std::vector<BigComplex> ratios;
        BigComplex inv_wj = reciprocal(omegas[(size_t)j]);
        for (int n = 0; n <= r + 1; n++) {
            if (n == j) continue;
            ratios.push_back(omegas[(size_t)n] * inv_wj);
        }
        prod *= gr(r, z * inv_wj, ratios, ctx);
    }
    BigComplex b = multi_bernoulli((unsigned)r + 2, (unsigned)r + 2, z, omegas);
    mpz_class fact(1);
    for (int k = 2; k <= r + 2; k++) fact *= k;
    // exp(-2 pi i B/(r+2)!); -i(a+bi) = b - ai
    BigFloat two_pi = BigFloat::pi(prec) + BigFloat::pi(prec);
    BigComplex arg = b * BigComplex::from_mpq(mpq_class(1, fact), prec);
    arg = BigComplex(arg.re() * two_pi, arg.im() * two_pi);
    BigComplex expected = exp(BigComplex(arg.im(), -arg.re()));
    return abs(prod - expected);
}

BigFloat conjugation_residual(int r, const BigComplex& z, const std::vector<BigComplex>& taus,
                              const PrecisionContext& ctx)
{
    std::vector<BigComplex> ctaus;
    ctaus.reserve(taus.size());
    for (const auto& t : taus) ctaus.push_back(conj(t));
    BigComplex lhs = gr(r, conj(z), ctaus, ctx);
    // conjugating z and every period inverts the value for every r: the
    // sine-sum coefficients satisfy conj(c_j) = -c_j in all degrees
    BigComplex rhs = reciprocal(conj(gr(r, z, taus, ctx)));
    return abs(lhs - rhs);
}

BigComplex gr_exponential_sum(int r, const BigComplex& z, const std::vector<BigComplex>& taus,
                              const PrecisionContext& ctx)
{
    if ((int)taus.size() != r + 1) throw domain_error("gr_exponential_sum: need r+1 periods");
    mpfr_prec_t prec = ctx.bits();
    BigComplex tau_sum(prec);
    double sum_abs_im = 0;
    for (const auto& t : taus) {
        tau_sum += t;
        sum_abs_im += std::fabs(t.im().to_double());
    }
    BigComplex w = z + z - tau_sum; // 2z - |tau|
    double margin = sum_abs_im - std::fabs(w.im().to_double());
    if (!(margin > 0))
        throw domain_error("gr_exponential_sum: outside the validity strip");

    double need_ln = ((double)(ctx.digits() + ctx.guard_digits()) + 8.0) * 2.302585092994046;
    long jmax = (long)std::ceil(need_ln / (M_PI * margin)) + 4;

    BigComplex sum(prec);
    for (long j = 1; j <= jmax; j++) {
        BigFloat jf = BigFloat::from_long(j, prec);
        BigComplex jw(w.re() * jf, w.im() * jf);
        BigComplex numv = (r % 2 == 1) ? sin_pi(jw) : cos_pi(jw);
        BigComplex den = BigComplex::from_long(j, prec);
        for (const auto& t : taus) den *= sin_pi(BigComplex(t.re() * jf, t.im() * jf));
        sum += numv / den;
    }
    // prefactor 1/(2i)^r for odd, 2/(2i)^{r+1} for even
    BigComplex pref;
    if (r % 2 == 1) {
        pref = pow_int(BigComplex(BigFloat(prec), BigFloat::from_long(2, prec)), r);
        pref = reciprocal(pref);
    } else {
        pref = pow_int(BigComplex(BigFloat(prec), BigFloat::from_long(2, prec)), r + 1);
        pref = reciprocal(pref);
        pref = pref + pref;
    }
    return exp(pref * sum);
}

} // namespace ellgr

#include "ellgr/arithmetic.hpp"

#include <algorithm>

namespace ellgr {

std::vector<FieldElement> UnitSystem::bracket(const NumberField& K,
                                              const std::vector<int>& rho) const
{
    std::vector<FieldElement> out;
    FieldElement acc = K.one();
    for (int idx : rho) {
        if (idx < 1 || idx > (int)fundamental.size())
            throw domain_error("UnitSystem::bracket: permutation index out of range");
        acc = K.mul(acc, fundamental[(size_t)idx - 1]);
        out.push_back(acc);
    }
    return out;
}

namespace {

std::vector<mpz_class> integer_coords(const NumberField& K, const FieldElement& el,
                                      const ZModuleBasis& M, const char* what)
{
    std::vector<mpq_class> co = module_coords(K, el, M);
    std::vector<mpz_class> out(co.size());
    for (size_t i = 0; i < co.size(); i++) {
        if (co[i].get_den() != 1)
            throw domain_error(std::string(what) + ": element lies outside the lattice");
        out[i] = co[i].get_num();
    }
    return out;
}

struct CoreSetup {
    mpz_class m;
    FieldElement h_prime;
    std::vector<FieldElement> basis;   // adapted positive basis
    std::vector<mpz_class> diag;
    mpz_class lambda;
    GeomFamily fam;
    int gamma_sign = 1;
    std::vector<FieldElement> alphas;  // as field elements
};

CoreSetup core_setup(const NumberField& K, const ZModuleBasis& lattice,
                     const std::vector<FieldElement>& bracket_units, const FieldElement& h,
                     const PrecisionContext& ctx)
{
    int d = K.degree();
    int r = (int)bracket_units.size();
    if (d != r + 2) throw domain_error("geometric_setup: unit count does not match the degree");

    CoreSetup cs;
    auto [m, hp] = primitive_part(K, h, lattice);
    cs.m = m;
    cs.h_prime = hp;

    std::vector<std::vector<mpz_class>> flags;
    flags.push_back(integer_coords(K, hp, lattice, "geometric_setup"));
    for (int j = 0; j < r; j++)
        flags.push_back(integer_coords(K, K.mul(bracket_units[(size_t)j], hp), lattice,
                                       "geometric_setup"));
    AdaptedBasis ab = adapted_basis(flags, d);
    if (ab.diag[0] != 1) throw error("geometric_setup: h' is not primitive after adaptation");
    cs.diag = ab.diag;
    cs.lambda = 1;
    for (int j = 1; j <= r; j++) cs.lambda *= ab.diag[(size_t)j];

    cs.basis.resize((size_t)d);
    for (int i = 0; i < d; i++) {
        FieldElement e = K.zero();
        for (int k = 0; k < d; k++)
            if (ab.basis.at(i, k) != 0)
                e = K.add(e, K.mul_scalar(lattice.basis[(size_t)k], mpq_class(ab.basis.at(i, k))));
        cs.basis[(size_t)i] = e;
    }
    if (K.orientation(cs.basis, ctx.bits()) < 0)
        cs.basis[(size_t)d - 1] = K.neg(cs.basis[(size_t)d - 1]);

    ZModuleBasis adapted{cs.basis, ZModuleBasis::Role::sublattice};
    IntMat abar(r + 1, d);
    for (int j = 0; j <= r; j++) {
        FieldElement uj = (j == 0) ? K.one() : bracket_units[(size_t)j - 1];
        for (int l = 0; l < d; l++) {
            std::vector<mpz_class> y =
                integer_coords(K, K.mul(uj, cs.basis[(size_t)l]), adapted, "geometric_setup");
            abar.at(j, l) = y[(size_t)d - 1];
        }
    }
    for (int j = 0; j <= r; j++)
        if (abar.at(j, 0) != 0)
            throw error("geometric_setup: flag adaptation failed, a(u_j) has an e_0 component");

    cs.fam = primitive_dual_family(abar);

    bool e0_dir = true;
    for (int i = 1; i < d; i++)
        if (cs.fam.gamma[(size_t)i] != 0) e0_dir = false;
    if (!e0_dir || abs(cs.fam.gamma[0]) != 1)
        throw error("geometric_setup: gamma is not the h' direction");
    cs.gamma_sign = cs.fam.gamma[0] > 0 ? 1 : -1;

    cs.alphas.resize((size_t)(r + 1));
    for (int j = 0; j <= r; j++) {
        FieldElement a = K.zero();
        for (int i = 0; i < d; i++)
            if (cs.fam.alphas.at(j, i) != 0)
                a = K.add(a, K.mul_scalar(cs.basis[(size_t)i], mpq_class(cs.fam.alphas.at(j, i))));
        cs.alphas[(size_t)j] = a;
    }
    return cs;
}

int vp(const mpz_class& n, const mpz_class& p)
{
    if (n == 0) throw domain_error("vp: valuation of zero");
    int v = 0;
    mpz_class m = abs(n);
    while (m % p == 0) { m /= p; v++; }
    return v;
}

} // namespace

GeomSetup geometric_setup(const NumberField& K, const ZModuleBasis& L, const ZModuleBasis& OK,
                          const std::vector<FieldElement>& bracket_units, const FieldElement& h,
                          const mpz_class& q, const mpz_class& N,
                          const PrecisionContext& ctx)
{
    int d = K.degree();
    int r = (int)bracket_units.size();

    CoreSetup main = core_setup(K, L, bracket_units, h, ctx);
    CoreSetup tilde = core_setup(K, OK, bracket_units, K.one(), ctx);

    GeomSetup g;
    g.r = r;
    g.q = q;
    g.smoothing_norm = N;
    g.h = h;
    g.h_prime = main.h_prime;
    g.m = main.m;
    g.gamma_sign = main.gamma_sign;
    g.adapted = main.basis;
    g.alphas = main.alphas;
    g.alphas_tilde = tilde.alphas;
    g.lambda = main.lambda;
    g.s = main.fam.s;
    g.t = main.fam.t;
    g.lambda_tilde = tilde.lambda;
    g.s_tilde = tilde.fam.s;
    g.t_tilde = tilde.fam.t;

    // level and sign: evaluate a u_j on (tilde alpha_j) h', an element of L
    ZModuleBasis adapted{main.basis, ZModuleBasis::Role::sublattice};
    std::optional<mpz_class> nval;
    for (int j = 0; j <= r; j++) {
        FieldElement uj = (j == 0) ? K.one() : bracket_units[(size_t)j - 1];
        FieldElement w = K.mul(uj, K.mul(tilde.alphas[(size_t)j], main.h_prime));
        std::vector<mpz_class> y = integer_coords(K, w, adapted, "geometric_setup level");
        mpz_class v = y[(size_t)d - 1];
        if (!nval) nval = v;
        else if (*nval != v) throw error("geometric_setup: level value depends on j");
    }
    if (*nval == 0) throw error("geometric_setup: degenerate level");
    g.eps_sign = *nval > 0 ? 1 : -1;
    mpz_class ln = abs(*nval);
    if (ln % g.t != 0) throw error("geometric_setup: t does not divide the level value");
    g.level = ln / g.t;

    // exact level identity: eps lambda l t = (N(h')/N(L)) lambda~ t~
    {
        mpq_class lhs = mpq_class(g.eps_sign) * mpq_class(g.lambda) * mpq_class(g.level) * mpq_class(g.t);
        mpq_class ratio = K.norm(g.h_prime) / module_norm(K, L, OK);
        mpq_class rhs = ratio * mpq_class(g.lambda_tilde) * mpq_class(g.t_tilde);
        if (lhs != rhs) throw error("geometric_setup: level identity failed");
    }

    // integer shifts m_j with eps l alpha_j = (alpha~_j + m_j) h'
    g.m_shift.resize((size_t)(r + 1));
    for (int j = 0; j <= r; j++) {
        FieldElement ratio = K.div(g.alphas[(size_t)j], g.h_prime);
        FieldElement diff = K.sub(K.mul_scalar(ratio, mpq_class(g.eps_sign) * mpq_class(g.level)),
                                  tilde.alphas[(size_t)j]);
        std::optional<mpq_class> asq = K.as_rational(diff);
        if (!asq || asq->get_den() != 1)
            throw error("geometric_setup: m_j is not an integer");
        g.m_shift[(size_t)j] = asq->get_num();
    }

    // tau_j = alpha_j / gamma and coset offsets delta / gamma, exact
    FieldElement gamma = K.mul_scalar(g.h_prime, mpq_class(g.gamma_sign));
    g.tau_elements.resize((size_t)(r + 1));
    for (int j = 0; j <= r; j++)
        g.tau_elements[(size_t)j] = K.div(g.alphas[(size_t)j], gamma);
    for (const auto& rep : coset_reps(main.fam)) {
        FieldElement delta = K.zero();
        for (int i = 0; i < d; i++)
            if (rep[(size_t)i] != 0)
                delta = K.add(delta, K.mul_scalar(main.basis[(size_t)i], mpq_class(rep[(size_t)i])));
        g.coset_offsets.push_back(K.div(delta, gamma));
    }
    return g;
}

StarReport check_star_conditions(const NumberField& K, const GeomSetup& setup,
                                 const mpz_class& q, const mpz_class& N,
                                 const mpz_class& norm_b, const PrecisionContext& ctx)
{
    StarReport rep;
    rep.content_one = setup.lambda_tilde == 1;
    mpz_class g;
    mpz_class prod = q * N * norm_b;
    mpz_gcd(g.get_mpz_t(), setup.t_tilde.get_mpz_t(), prod.get_mpz_t());
    rep.overflow_coprime = (g == 1);
    rep.alphas_nonreal = true;
    double tol = -(double)ctx.digits() / 2.0;
    for (const auto& at : setup.alphas_tilde) {
        BigComplex v = K.embed_complex(at, ctx.bits());
        if (v.im().log10_abs() < tol + std::max(0.0, v.log10_abs())) rep.alphas_nonreal = false;
    }
    return rep;
}

bool verify_target_ideal(const NumberField& K, const TargetIdealData& data,
                         const std::vector<FieldElement>& bracket_units,
                         const std::vector<FieldElement>& alphas_tilde,
                         const ZModuleBasis& OK, int search_radius)
{
    int r = (int)bracket_units.size();
    mpz_class pv_t;
    mpz_pow_ui(pv_t.get_mpz_t(), data.p.get_mpz_t(), (unsigned long)data.vp_t_tilde);
    mpz_class pv_s;
    mpz_pow_ui(pv_s.get_mpz_t(), data.p.get_mpz_t(), (unsigned long)data.vp_s_tilde);

    // N(I) = p^{v_p(s~)} and N(I)N(I^c) = p^{v_p(t~) d}
    mpq_class nI = module_norm(K, data.ideal, OK);
    mpq_class nIc = module_norm(K, data.complement, OK);
    if (nI != mpq_class(pv_s)) return false;
    mpz_class full;
    mpz_pow_ui(full.get_mpz_t(), pv_t.get_mpz_t(), (unsigned long)K.degree());
    if (nI * nIc != mpq_class(full)) return false;

    // I I^c inside p^{v} O_K, checked on basis products
    auto in_scaled_ok = [&](const FieldElement& x, const mpz_class& scale) {
        std::vector<mpq_class> co = module_coords(K, x, OK);
        for (const auto& cq : co) {
            mpq_class s = cq / mpq_class(scale);
            s.canonicalize();
            if (s.get_den() != 1) return false;
        }
        return true;
    };
    for (const auto& a : data.ideal.basis)
        for (const auto& b : data.complement.basis)
            if (!in_scaled_ok(K.mul(a, b), pv_t)) return false;

    // each J_k divides I^c and I J_k lies in p^{w_k} O_K with sum w_k = v_p(s~)
    if (data.J.size() != data.w.size()) throw domain_error("verify_target_ideal: J/w mismatch");
    int wsum = 0;
    for (size_t k = 0; k < data.J.size(); k++) {
        wsum += data.w[k];
        for (const auto& b : data.complement.basis)
            if (!module_contains(K, b, data.J[k])) return false;
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), data.p.get_mpz_t(), (unsigned long)data.w[k]);
        for (const auto& a : data.ideal.basis)
            for (const auto& b : data.J[k].basis)
                if (!in_scaled_ok(K.mul(a, b), pw)) return false;
    }
    if (wsum != data.vp_s_tilde) return false;

    // unit combinations u_{m_k} + sum_{j < m_k} n_j u_j in J_k for distinct
    // ascending indices m_1 < ... < m_k0.  The n_0 coefficient is a linear
    // congruence with a closed-form solution; higher coefficients get a
    // bounded box on top of it.
    std::vector<FieldElement> u;
    u.push_back(K.one());
    for (const auto& b : bracket_units) u.push_back(b);

    auto shift_into = [&](const FieldElement& um, const ZModuleBasis& J) -> bool {
        // find n with um + n * 1 in J by a coordinatewise CRT
        std::vector<mpq_class> cm = module_coords(K, um, J);
        std::vector<mpq_class> c1 = module_coords(K, K.one(), J);
        mpz_class mod(1), rem(0);
        for (int i = 0; i < K.degree(); i++) {
            mpz_class da = c1[(size_t)i].get_den(), db = cm[(size_t)i].get_den();
            mpz_class D;
            mpz_lcm(D.get_mpz_t(), da.get_mpz_t(), db.get_mpz_t());
            if (D == 1) continue;
            mpq_class aq = c1[(size_t)i] * mpq_class(D);
            mpq_class bq = cm[(size_t)i] * mpq_class(-D);
            mpz_class a = aq.get_num() % D, b = bq.get_num() % D;
            if (a < 0) a += D;
            if (b < 0) b += D;
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), D.get_mpz_t());
            if (b % g != 0) return false;
            mpz_class Dg = D / g, ag = a / g, bg = b / g, inv;
            if (Dg == 1) continue;
            if (mpz_invert(inv.get_mpz_t(), ag.get_mpz_t(), Dg.get_mpz_t()) == 0) return false;
            mpz_class ni = (bg * inv) % Dg;
            // combine with the running congruence n = rem mod mod
            mpz_class g2;
            mpz_gcd(g2.get_mpz_t(), mod.get_mpz_t(), Dg.get_mpz_t());
            if ((rem - ni) % g2 != 0) return false;
            mpz_class lcm = mod / g2 * Dg;
            mpz_class step = Dg / g2;
            if (step > 1) {
                mpz_class mg = mod / g2;
                mpz_class minv;
                if (mpz_invert(minv.get_mpz_t(), mg.get_mpz_t(), step.get_mpz_t()) == 0)
                    return false;
                mpz_class t = (((ni - rem) / g2) % step * minv) % step;
                if (t < 0) t += step;
                rem += mod * t;
            }
            mod = lcm;
            rem %= mod;
            if (rem < 0) rem += mod;
        }
        return module_contains(K, K.add(um, K.from_rational(mpq_class(rem))), J);
    };

    int prev = 0;
    for (size_t k = 0; k < data.J.size(); k++) {
        bool found_k = false;
        for (int idx = prev + 1; idx <= r && !found_k; idx++) {
            // box over the coefficients of u_1..u_{idx-1}; n_0 solved exactly
            std::vector<long> hi((size_t)std::max(idx - 1, 0), -search_radius);
            for (;;) {
                FieldElement cand = u[(size_t)idx];
                for (int j = 1; j < idx; j++)
                    cand = K.add(cand, K.mul_scalar(u[(size_t)j], mpq_class(hi[(size_t)j - 1])));
                if (shift_into(cand, data.J[k])) {
                    found_k = true;
                    prev = idx;
                    break;
                }
                int pos = 0;
                while (pos < idx - 1) {
                    hi[(size_t)pos]++;
                    if (hi[(size_t)pos] <= search_radius) break;
                    hi[(size_t)pos] = -search_radius;
                    pos++;
                }
                if (pos >= idx - 1) break;
            }
        }
        if (!found_k) return false;
    }

    // every tilde alpha congruent to an integer mod I^c
    for (const auto& at : alphas_tilde) {
        bool found = false;
        for (mpz_class nn = 0; nn < pv_t && !found; nn++) {
            FieldElement diff = K.sub(at, K.from_rational(mpq_class(nn)));
            if (module_contains(K, diff, data.complement)) found = true;
        }
        if (!found) return false;
    }
    return true;
}

bool verify_helper_ideal(const NumberField& K, const HelperIdealData& data,
                         const ZModuleBasis& OK, const GeomSetup& setup)
{
    mpq_class nIc = module_norm(K, data.complement, OK);
    if (nIc.get_den() != 1) return false;
    std::vector<mpz_class> fs = factorize(nIc.get_num());
    for (size_t i = 1; i < fs.size(); i++)
        if (fs[i] == fs[i - 1]) return false; // complement norm must be squarefree
    if (vp(setup.level, data.p) != 1) return false;
    if (setup.t % data.p == 0) return false;
    return true;
}

ZfOneSet build_zf_one(const NumberField& K, const ZModuleBasis& f_ideal, const mpz_class& q,
                      const UnitSystem& units, long search_radius)
{
    int r = (int)units.fundamental.size();
    long qv = (long)q.get_si();
    if (mpq_class(q) != mpq_class(qv)) throw domain_error("build_zf_one: q too large");

    // power tables
    std::vector<std::vector<FieldElement>> pows((size_t)r);
    for (int i = 0; i < r; i++) {
        pows[(size_t)i].resize((size_t)(2 * search_radius + 1));
        for (long k = -search_radius; k <= search_radius; k++)
            pows[(size_t)i][(size_t)(k + search_radius)] = K.pow(units.fundamental[(size_t)i], k);
    }

    ZfOneSet out;
    for (long n = 1; n < qv; n++) {
        mpz_class g;
        mpz_class nz(n), qz(qv);
        mpz_gcd(g.get_mpz_t(), nz.get_mpz_t(), qz.get_mpz_t());
        if (g != 1) continue;

        bool found = false;
        ZfOneElement el;
        std::vector<long> k((size_t)r, -search_radius);
        for (;;) {
            FieldElement eps = K.one();
            for (int i = 0; i < r; i++) eps = K.mul(eps, pows[(size_t)i][(size_t)(k[(size_t)i] + search_radius)]);
            for (int sign = 0; sign < 2; sign++) {
                FieldElement cand = sign == 0 ? eps : K.neg(eps);
                FieldElement test = K.sub(K.mul_scalar(cand, mpq_class(n)), K.one());
                if (module_contains(K, test, f_ideal)) {
                    mpq_class nm = K.norm(cand);
                    el.n = n;
                    el.chi = nm > 0 ? 1 : -1;
                    el.torsion_sign = sign == 0 ? 1 : -1;
                    el.exponents.assign(k.begin(), k.end());
                    found = true;
                    break;
                }
            }
            if (found) break;
            if (r == 0) break;
            int pos = 0;
            while (pos < r) {
                k[(size_t)pos]++;
                if (k[(size_t)pos] <= search_radius) break;
                k[(size_t)pos] = -search_radius;
                pos++;
            }
            if (pos == r) break;
        }
        if (found) out.elements.push_back(el);
    }

    bool has_one = false;
    for (const auto& el : out.elements)
        if (el.n == 1) has_one = true;
    if (!has_one) throw error("build_zf_one: (1,1) not found, search radius too small");
    return out;
}

long smoothing_order(int r, const mpz_class& N)
{
    if (N == 2) return 4;
    if (N >= 3 && N <= r + 3) return N.get_si();
    return 1;
}

int unit_system_sign(const NumberField& K, const UnitSystem& units, const PrecisionContext& ctx)
{
    int r = (int)units.fundamental.size();
    if (r == 0) return 1;
    mpfr_prec_t bits = ctx.bits();
    // real embeddings are the first r; totally positive units have positive logs
    std::vector<std::vector<BigFloat>> m((size_t)r, std::vector<BigFloat>((size_t)r, BigFloat(bits)));
    for (int j = 0; j < r; j++)
        for (int k = 0; k < r; k++) {
            BigComplex v = K.embed(units.fundamental[(size_t)k], j, bits);
            if (!(v.re() > BigFloat(bits)))
                throw domain_error("unit_system_sign: unit is not totally positive");
            m[(size_t)j][(size_t)k] = log(v.re());
        }
    // small real determinant with partial pivoting
    int sign = 1;
    for (int col = 0; col < r; col++) {
        int piv = -1;
        double best = -1e300;
        for (int i = col; i < r; i++) {
            double mag = m[(size_t)i][(size_t)col].log10_abs();
            if (mag > best) { best = mag; piv = i; }
        }
        if (best < -(double)ctx.digits() / 2.0)
            throw domain_error("unit_system_sign: regulator determinant too close to zero");
        if (piv != col) { std::swap(m[(size_t)piv], m[(size_t)col]); sign = -sign; }
        if (m[(size_t)col][(size_t)col].sign() < 0) { /* handled at the end via product */ }
        for (int i = col + 1; i < r; i++) {
            BigFloat f = m[(size_t)i][(size_t)col] / m[(size_t)col][(size_t)col];
            for (int j = col; j < r; j++)
                m[(size_t)i][(size_t)j] = m[(size_t)i][(size_t)j] - f * m[(size_t)col][(size_t)j];
        }
    }
    for (int i = 0; i < r; i++)
        if (m[(size_t)i][(size_t)i].sign() < 0) sign = -sign;
    return sign;
}

std::vector<BigComplex> arithmetic_gr_batch(const NumberField& K, const GeomSetup& setup,
                                            const std::vector<std::pair<int, long>>& mun,
                                            const PrecisionContext& ctx, int threads)
{
    unsigned long lvl = 1;
    if (mpz_fits_ulong_p(setup.level.get_mpz_t())) lvl = setup.level.get_ui();
    PrecisionContext lctx(ctx.digits(), ctx.guard_digits());
    lctx = lctx.with_level(lvl);
    mpfr_prec_t bits = lctx.bits();

    // fold negative n through the unit -1 (norm (-1)^d)
    int sigma = (K.degree() % 2 == 0) ? 1 : -1;
    struct Item { int mu; long n; bool flip; };
    std::vector<Item> items;
    for (auto [mu, n] : mun) {
        if (n == 0) throw domain_error("arithmetic_gr: n must be nonzero");
        if (n < 0)
            items.push_back({mu * sigma, -n, sigma < 0});
        else
            items.push_back({mu, n, false});
    }

    long N = setup.smoothing_norm.get_si();
    std::vector<BigComplex> taus, taus_N;
    for (const auto& te : setup.tau_elements) {
        taus.push_back(K.embed_complex(te, bits));
        taus_N.push_back(K.embed_complex(K.mul_scalar(te, mpq_class(N)), bits));
    }
    std::vector<BigComplex> offs, offs_N;
    for (const auto& off : setup.coset_offsets) {
        offs.push_back(K.embed_complex(off, bits));
        offs_N.push_back(K.embed_complex(K.mul_scalar(off, mpq_class(N)), bits));
    }

    // one z per (item, coset) for the numerator and the denominator series
    std::vector<BigComplex> zs, zs_N;
    for (const auto& it : items) {
        mpq_class base = mpq_class(it.mu) * mpq_class(it.n) *
                         mpq_class(setup.m * setup.gamma_sign) / mpq_class(setup.q);
        base.canonicalize();
        for (size_t c = 0; c < offs.size(); c++) {
            zs.push_back(BigComplex::from_mpq(base, bits) + offs[c]);
            zs_N.push_back(BigComplex::from_mpq(base * N, bits) + offs_N[c]);
        }
    }
    std::vector<BigComplex> num = gr_multi(setup.r, zs, taus, lctx, threads);
    std::vector<BigComplex> den = gr_multi(setup.r, zs_N, taus_N, lctx, threads);

    std::vector<BigComplex> out;
    size_t nc = offs.size();
    for (size_t i = 0; i < items.size(); i++) {
        BigComplex prod = BigComplex::from_long(1, bits);
        for (size_t c = 0; c < nc; c++)
            prod *= pow_int(num[i * nc + c], N) / den[i * nc + c];
        // the coset product equals G^mu(...)^{mu^r}
        if ((setup.r & 1) && items[i].mu < 0) prod = reciprocal(prod);
        if (items[i].flip) prod = reciprocal(prod);
        out.push_back(std::move(prod));
    }
    return out;
}

BigComplex arithmetic_gr(const NumberField& K, const GeomSetup& setup, int mu, long n,
                         const PrecisionContext& ctx, int threads)
{
    return arithmetic_gr_batch(K, setup, {{mu, n}}, ctx, threads)[0];
}

BigComplex zf_one_factor(const NumberField& K, const GeomSetup& setup, int mu_rho, int nu_rho,
                         const ZfOneElement& el, const PrecisionContext& ctx, int threads)
{
    BigComplex v = arithmetic_gr(K, setup, mu_rho * el.chi, el.n, ctx, threads);
    int outer = el.chi * nu_rho;
    return outer == 1 ? v : reciprocal(v);
}

BigComplex i_r_product(const NumberField& K, const std::vector<GeomSetup>& setups_per_rho,
                       const std::vector<int>& mu, const std::vector<int>& nu,
                       const ZfOneSet& zf, const PrecisionContext& ctx, int threads)
{
    if (setups_per_rho.size() != mu.size() || mu.size() != nu.size())
        throw domain_error("i_r_product: orientation count mismatch");
    BigComplex prod = BigComplex::from_long(1, ctx.bits());
    for (size_t i = 0; i < setups_per_rho.size(); i++) {
        std::vector<std::pair<int, long>> mun;
        for (const auto& el : zf.elements) mun.emplace_back(mu[i] * el.chi, el.n);
        std::vector<BigComplex> vals = arithmetic_gr_batch(K, setups_per_rho[i], mun, ctx, threads);
        for (size_t e = 0; e < vals.size(); e++) {
            int outer = zf.elements[e].chi * nu[i];
            prod *= outer == 1 ? vals[e] : reciprocal(vals[e]);
        }
    }
    return prod;
}

BigComplex smoothed_quotient(int r, const BigComplex& w, const std::vector<BigComplex>& taus,
                             long N, int outer, const PrecisionContext& ctx, int threads)
{
    mpfr_prec_t bits = ctx.bits();
    BigComplex Nc = BigComplex::from_long(N, bits);
    std::vector<BigComplex> taus_N;
    for (const auto& t : taus) taus_N.push_back(t * Nc);
    BigComplex num = gr(r, w, taus, ctx, threads);
    BigComplex den = gr(r, w * Nc, taus_N, ctx, threads);
    BigComplex v = pow_int(num, N) / den;
    return outer == 1 ? v : reciprocal(v);
}

} // namespace ellgr

#include "ellgr/zlattice.hpp"

#include <algorithm>

namespace ellgr {

std::vector<mpz_class> factorize(const mpz_class& n)
{
    if (n <= 0) throw domain_error("factorize: need a positive integer");
    std::vector<mpz_class> out;
    mpz_class m = n;
    for (mpz_class p = 2; p * p <= m && p < 2000000; p == 2 ? p = 3 : p += 2) {
        while (m % p == 0) { out.push_back(p); m /= p; }
    }
    if (m > 1) {
        if (mpz_probab_prime_p(m.get_mpz_t(), 40) == 0)
            throw error("factorize: composite cofactor beyond trial division bound");
        out.push_back(m);
    }
    return out;
}

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b)
{
    if (a.size() != b.size()) throw domain_error("dot: size mismatch");
    mpz_class s(0);
    for (size_t i = 0; i < a.size(); i++) s += a[i] * b[i];
    return s;
}

BigComplex eval_form(const std::vector<mpz_class>& form, const std::vector<BigComplex>& x)
{
    if (form.size() != x.size()) throw domain_error("eval_form: size mismatch");
    mpfr_prec_t prec = 64;
    for (const auto& v : x) prec = std::max(prec, v.prec());
    BigComplex s(prec);
    for (size_t i = 0; i < form.size(); i++) {
        if (form[i] == 0) continue;
        s += x[i] * BigComplex::from_mpq(mpq_class(form[i]), prec);
    }
    return s;
}

std::vector<mpz_class> cross_form(const IntMat& rows)
{
    int n = rows.cols();
    if (rows.rows() != n - 1) throw domain_error("cross_form: need n-1 rows of size n");
    std::vector<mpz_class> out((size_t)n);
    IntMat minor(n - 1, n - 1);
    for (int i = 0; i < n; i++) {
        for (int rr = 0; rr < n - 1; rr++) {
            int cc = 0;
            for (int c = 0; c < n; c++) {
                if (c == i) continue;
                minor.at(rr, cc++) = rows.at(rr, c);
            }
        }
        mpz_class d = det(minor);
        // sign of the cofactor expansion along the appended last row
        out[(size_t)i] = (((n - 1) + i) % 2 == 0) ? d : mpz_class(-d);
    }
    return out;
}

namespace {

bool row_primitive(const IntMat& m, int i)
{
    std::vector<mpz_class> row((size_t)m.cols());
    for (int j = 0; j < m.cols(); j++) row[(size_t)j] = m.at(i, j);
    return content(row) == 1;
}

// integer vector c with g . c = 1, g primitive
std::vector<mpz_class> unimodular_complement(const std::vector<mpz_class>& g)
{
    size_t n = g.size();
    std::vector<mpz_class> c(n, mpz_class(0));
    // extended gcd over the entries
    mpz_class acc(0);
    std::vector<mpz_class> coeff(n, mpz_class(0));
    for (size_t i = 0; i < n; i++) {
        if (g[i] == 0) continue;
        if (acc == 0) {
            acc = abs(g[i]);
            coeff[i] = g[i] > 0 ? 1 : -1;
            continue;
        }
        mpz_class gg, u, v;
        mpz_gcdext(gg.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), acc.get_mpz_t(), g[i].get_mpz_t());
        for (size_t k = 0; k < i; k++) coeff[k] *= u;
        coeff[i] = v;
        acc = gg;
    }
    if (acc != 1) throw domain_error("unimodular_complement: vector is not primitive");
    return coeff;
}

} // namespace

GeomFamily primitive_dual_family(const IntMat& a_forms)
{
    int n = a_forms.cols();
    int m = a_forms.rows(); // r+1
    if (m + 1 != n) throw domain_error("primitive_dual_family: need r+1 forms in rank r+2");
    for (int i = 0; i < m; i++)
        if (!row_primitive(a_forms, i))
            throw domain_error("primitive_dual_family: rows must be primitive");

    GeomFamily fam;
    fam.r = m - 1;
    fam.a_forms = a_forms;

    std::vector<mpz_class> cross = cross_form(a_forms);
    mpz_class cont = content(cross);
    if (cont == 0) throw domain_error("primitive_dual_family: dependent rows");
    fam.s = cont;
    fam.gamma.resize((size_t)n);
    for (int i = 0; i < n; i++)
        mpz_divexact(fam.gamma[(size_t)i].get_mpz_t(), cross[(size_t)i].get_mpz_t(), cont.get_mpz_t());

    // det(a_0..a_r, c) = s gamma(c); pick c with gamma(c) = 1, stack and invert
    std::vector<mpz_class> c = unimodular_complement(fam.gamma);
    IntMat P(n, n);
    for (int j = 0; j < m; j++)
        for (int i = 0; i < n; i++) P.at(i, j) = a_forms.at(j, i); // column j = a_j
    for (int i = 0; i < n; i++) P.at(i, m) = c[(size_t)i];

    SmithDecomposition snf = smith_normal_form(P);
    fam.divisors = snf.divisors;
    fam.t = snf.divisors.back();

    // Q = (t/s) adj(P) has rows alpha_0..alpha_r, t*gamma
    IntMat adj = adjugate(P);
    fam.alphas = IntMat(m, n);
    for (int j = 0; j < m; j++)
        for (int i = 0; i < n; i++) {
            mpz_class v = adj.at(j, i) * fam.t;
            if (v % fam.s != 0)
                throw error("primitive_dual_family: rescaled comatrix is not integral");
            fam.alphas.at(j, i) = v / fam.s;
        }
    // consistency: last row of Q must be t*gamma, and a . alpha^T = t I
    for (int i = 0; i < n; i++) {
        mpz_class v = adj.at(m, i) * fam.t;
        if (v / fam.s != fam.t * fam.gamma[(size_t)i])
            throw error("primitive_dual_family: gamma row mismatch");
    }
    for (int j = 0; j < m; j++)
        for (int k = 0; k < m; k++) {
            mpz_class acc(0);
            for (int i = 0; i < n; i++) acc += a_forms.at(j, i) * fam.alphas.at(k, i);
            if (acc != (j == k ? fam.t : mpz_class(0)))
                throw error("primitive_dual_family: dual family identity failed");
        }

    // witness index per prime p | t: some alpha_j independent of gamma mod p
    for (const mpz_class& p : factorize(fam.t)) {
        if (fam.primitivity_witness.count(p)) continue;
        int witness = -1;
        for (int j = 0; j < m && witness < 0; j++) {
            for (int i1 = 0; i1 < n && witness < 0; i1++)
                for (int i2 = i1 + 1; i2 < n && witness < 0; i2++) {
                    mpz_class det2 = fam.alphas.at(j, i1) * fam.gamma[(size_t)i2]
                                   - fam.alphas.at(j, i2) * fam.gamma[(size_t)i1];
                    if (det2 % p != 0) witness = j;
                }
        }
        if (witness < 0)
            throw error("primitive_dual_family: no primitivity witness, family is not minimal");
        fam.primitivity_witness[p] = witness;
    }
    return fam;
}

std::vector<std::vector<mpz_class>> coset_reps(const GeomFamily& fam)
{
    int n = fam.a_forms.cols();
    int m = fam.a_forms.rows();
    // columns gamma, alpha_0..alpha_r span M
    IntMat M(n, n);
    for (int i = 0; i < n; i++) M.at(i, 0) = fam.gamma[(size_t)i];
    for (int j = 0; j < m; j++)
        for (int i = 0; i < n; i++) M.at(i, j + 1) = fam.alphas.at(j, i);

    SmithDecomposition snf = smith_normal_form(M);
    mpz_class count(1);
    for (const auto& d : snf.divisors) count *= d;
    mpz_class expected = 1;
    for (int j = 0; j < m; j++) expected *= fam.t;
    expected /= fam.s;
    if (count != expected)
        throw error("coset_reps: quotient size mismatch");
    if (count > 1000000)
        throw error("coset_reps: quotient too large to enumerate");

    IntMat winv = adjugate(snf.U);
    mpz_class du = det(snf.U);
    if (du == -1)
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) winv.at(i, j) = -winv.at(i, j);

    std::vector<std::vector<mpz_class>> reps;
    std::vector<mpz_class> k(n, mpz_class(0));
    for (;;) {
        std::vector<mpz_class> delta((size_t)n, mpz_class(0));
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) delta[(size_t)i] += winv.at(i, j) * k[(size_t)j];
        // normalize into the box 0 <= a_j(delta) < t
        for (int j = 0; j < m; j++) {
            std::vector<mpz_class> aj((size_t)n);
            for (int i = 0; i < n; i++) aj[(size_t)i] = fam.a_forms.at(j, i);
            mpz_class val = dot(aj, delta);
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), val.get_mpz_t(), fam.t.get_mpz_t());
            if (q != 0)
                for (int i = 0; i < n; i++) delta[(size_t)i] -= q * fam.alphas.at(j, i);
        }
        reps.push_back(std::move(delta));
        int pos = n - 1;
        while (pos >= 0) {
            k[(size_t)pos] += 1;
            if (k[(size_t)pos] < snf.divisors[(size_t)pos]) break;
            k[(size_t)pos] = 0;
            pos--;
        }
        if (pos < 0) break;
    }
    return reps;
}

BigComplex geometric_gr(const GeomFamily& fam, const BigComplex& w,
                        const std::vector<BigComplex>& x, const PrecisionContext& ctx,
                        int threads)
{
    int n = fam.a_forms.cols();
    int m = fam.a_forms.rows();
    if ((int)x.size() != n) throw domain_error("geometric_gr: x has wrong dimension");
    mpfr_prec_t prec = ctx.bits();

    BigComplex gx = eval_form(fam.gamma, x);
    if (gx.log10_abs() < -(double)ctx.digits() / 2.0)
        throw domain_error("geometric_gr: gamma(x) vanishes");
    BigComplex ginv = reciprocal(gx);

    std::vector<BigComplex> taus;
    double real_tol = -(double)ctx.digits() / 2.0;
    for (int j = 0; j < m; j++) {
        std::vector<mpz_class> aj((size_t)n);
        for (int i = 0; i < n; i++) aj[(size_t)i] = fam.alphas.at(j, i);
        BigComplex tau = eval_form(aj, x) * ginv;
        if (tau.im().log10_abs() < real_tol + std::max(0.0, tau.log10_abs()))
            throw domain_error("geometric_gr: alpha_j(x)/gamma(x) is real within tolerance");
        taus.push_back(std::move(tau));
    }

    std::vector<BigComplex> zs;
    for (const auto& delta : coset_reps(fam))
        zs.push_back((w + eval_form(delta, x)) * ginv);

    std::vector<BigComplex> vals = gr_multi(fam.r, std::move(zs), std::move(taus), ctx, threads);
    BigComplex prod = BigComplex::from_long(1, prec);
    for (const auto& v : vals) prod *= v;
    return prod;
}

std::pair<BigComplex, BigComplex> geometric_bernoulli(const IntMat& a_full, const BigComplex& w,
                                                      const std::vector<BigComplex>& x,
                                                      const PrecisionContext& ctx)
{
    int n = a_full.cols();
    if (a_full.rows() != n) throw domain_error("geometric_bernoulli: need r+2 rows in rank r+2");
    int r = n - 2;
    mpfr_prec_t prec = ctx.bits();

    IntMat at = a_full.transpose();
    mpz_class d = det(at);
    if (d == 0) throw domain_error("geometric_bernoulli: dependent rows");
    int eps = (((r + 1) % 2 == 0) ? 1 : -1) * (d > 0 ? 1 : -1);

    // unique primitive positive dual family
    IntMat alphas(n, n);
    std::vector<mpz_class> svals((size_t)n);
    IntMat sub(n - 1, n);
    for (int j = 0; j < n; j++) {
        int rr = 0;
        for (int i = 0; i < n; i++) {
            if (i == j) continue;
            for (int cc = 0; cc < n; cc++) sub.at(rr, cc) = a_full.at(i, cc);
            rr++;
        }
        std::vector<mpz_class> v = cross_form(sub);
        mpz_class cont = content(v);
        std::vector<mpz_class> aj((size_t)n);
        for (int i = 0; i < n; i++) aj[(size_t)i] = a_full.at(j, i);
        mpz_class val = dot(v, aj);
        if (val == 0) throw error("geometric_bernoulli: degenerate cofactor");
        int sign = val > 0 ? 1 : -1;
        for (int i = 0; i < n; i++) {
            mpz_class e;
            mpz_divexact(e.get_mpz_t(), v[(size_t)i].get_mpz_t(), cont.get_mpz_t());
            alphas.at(j, i) = sign > 0 ? e : mpz_class(-e);
        }
        svals[(size_t)j] = abs(val) / cont;
    }

    // enumerate F = { delta : 0 <= a_j(delta) < s_j } as L / (sum Z alpha_j)
    IntMat M(n, n);
    for (int j = 0; j < n; j++)
        for (int i = 0; i < n; i++) M.at(i, j) = alphas.at(j, i);
    SmithDecomposition snf = smith_normal_form(M);
    mpz_class count(1);
    for (const auto& dv : snf.divisors) count *= dv;
    if (count > 200000) throw error("geometric_bernoulli: F too large to enumerate");

    IntMat winv = adjugate(snf.U);
    if (det(snf.U) == -1)
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) winv.at(i, j) = -winv.at(i, j);

    std::vector<BigComplex> alpha_x;
    for (int j = 0; j < n; j++) {
        std::vector<mpz_class> aj((size_t)n);
        for (int i = 0; i < n; i++) aj[(size_t)i] = alphas.at(j, i);
        alpha_x.push_back(eval_form(aj, x));
    }

    BigComplex total(prec);
    std::vector<mpz_class> k(n, mpz_class(0));
    for (;;) {
        std::vector<mpz_class> delta((size_t)n, mpz_class(0));
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) delta[(size_t)i] += winv.at(i, j) * k[(size_t)j];
        for (int j = 0; j < n; j++) {
            std::vector<mpz_class> aj((size_t)n);
            for (int i = 0; i < n; i++) aj[(size_t)i] = a_full.at(j, i);
            mpz_class val = dot(aj, delta);
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), val.get_mpz_t(), svals[(size_t)j].get_mpz_t());
            if (q != 0)
                for (int i = 0; i < n; i++) delta[(size_t)i] -= q * alphas.at(j, i);
        }
        total += multi_bernoulli_star((unsigned)n, (unsigned)n, w + eval_form(delta, x), alpha_x);
        int pos = n - 1;
        while (pos >= 0) {
            k[(size_t)pos] += 1;
            if (k[(size_t)pos] < snf.divisors[(size_t)pos]) break;
            k[(size_t)pos] = 0;
            pos--;
        }
        if (pos < 0) break;
    }

    mpz_class fact(1);
    for (int i = 2; i <= n; i++) fact *= i;
    BigComplex star = total * BigComplex::from_mpq(mpq_class(-2 * eps, fact), prec);
    BigComplex denom = BigComplex::from_long(1, prec);
    for (int j = 0; j < n; j++) denom *= alpha_x[(size_t)j];
    return {star, star / denom};
}

AdaptedBasis adapted_basis(const std::vector<std::vector<mpz_class>>& flags, int dim)
{
    int m = (int)flags.size();
    if (m > dim) throw domain_error("adapted_basis: more flags than dimensions");
    IntMat E = IntMat::identity(dim);    // rows = basis vectors
    IntMat Einv = IntMat::identity(dim); // E * Einv = I (as row-basis bookkeeping)

    AdaptedBasis out;
    out.diag.resize((size_t)m);

    for (int j = 0; j < m; j++) {
        if ((int)flags[(size_t)j].size() != dim)
            throw domain_error("adapted_basis: flag vector has wrong dimension");
        // coordinates of the flag in the current basis: y = flag * Einv
        std::vector<mpz_class> y((size_t)dim, mpz_class(0));
        for (int c = 0; c < dim; c++)
            for (int i = 0; i < dim; i++) y[(size_t)c] += flags[(size_t)j][(size_t)i] * Einv.at(i, c);

        // gcd-reduce the tail y[j..] to (g, 0, ..., 0) with column ops on Einv
        // mirrored as inverse row ops on E
        for (;;) {
            int piv = -1;
            mpz_class best;
            for (int c = j; c < dim; c++) {
                if (y[(size_t)c] == 0) continue;
                mpz_class v = abs(y[(size_t)c]);
                if (piv < 0 || v < best) { best = v; piv = c; }
            }
            if (piv < 0) throw domain_error("adapted_basis: flag vectors are dependent");
            if (piv != j) {
                std::swap(y[(size_t)piv], y[(size_t)j]);
                Einv.swap_cols(piv, j);
                E.swap_rows(piv, j);
            }
            bool done = true;
            for (int c = j + 1; c < dim; c++) {
                if (y[(size_t)c] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), y[(size_t)c].get_mpz_t(), y[(size_t)j].get_mpz_t());
                if (q != 0) {
                    // col_c -= q col_j on coordinates <=> col op on Einv, row op on E
                    y[(size_t)c] -= q * y[(size_t)j];
                    Einv.addmul_col(c, j, q);
                    E.addmul_row(j, c, mpz_class(-q)); // row_j += q row_c
                }
                if (y[(size_t)c] != 0) done = false;
            }
            if (done) break;
        }
        if (y[(size_t)j] < 0) {
            y[(size_t)j] = -y[(size_t)j];
            Einv.negate_col(j);
            E.negate_row(j);
        }
        out.diag[(size_t)j] = y[(size_t)j];
    }
    out.basis = E;
    return out;
}

} // namespace ellgr

#include "ellgr/relation.hpp"

#include <algorithm>

namespace ellgr {

namespace {

struct GramSchmidt {
    // exact GS data for rows of B
    std::vector<std::vector<mpq_class>> mu; // mu[i][j], j < i
    std::vector<mpq_class> Bnorm;           // |b*_i|^2

    void compute(const IntMat& b)
    {
        int n = b.rows(), m = b.cols();
        mu.assign((size_t)n, {});
        Bnorm.assign((size_t)n, mpq_class(0));
        std::vector<std::vector<mpq_class>> star((size_t)n, std::vector<mpq_class>((size_t)m));
        for (int i = 0; i < n; i++) {
            for (int k = 0; k < m; k++) star[(size_t)i][(size_t)k] = mpq_class(b.at(i, k));
            mu[(size_t)i].assign((size_t)i, mpq_class(0));
            for (int j = 0; j < i; j++) {
                mpq_class dot(0);
                for (int k = 0; k < m; k++) dot += mpq_class(b.at(i, k)) * star[(size_t)j][(size_t)k];
                if (Bnorm[(size_t)j] == 0) throw domain_error("lll: dependent rows");
                mpq_class f = dot / Bnorm[(size_t)j];
                mu[(size_t)i][(size_t)j] = f;
                for (int k = 0; k < m; k++)
                    star[(size_t)i][(size_t)k] -= f * star[(size_t)j][(size_t)k];
            }
            mpq_class nn(0);
            for (int k = 0; k < m; k++) nn += star[(size_t)i][(size_t)k] * star[(size_t)i][(size_t)k];
            Bnorm[(size_t)i] = nn;
            if (nn == 0) throw domain_error("lll: dependent rows");
        }
    }
};

mpz_class round_q(const mpq_class& q)
{
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class r, rem;
    mpz_fdiv_qr(r.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (rem * 2 >= den) r += 1;
    return r;
}

} // namespace

ReducedLattice lll(const IntMat& basis, const mpq_class& delta)
{
    if (!(delta > mpq_class(1, 4) && delta < 1))
        throw domain_error("lll: delta must lie in (1/4, 1)");
    IntMat b = basis;
    int n = b.rows();
    GramSchmidt gs;
    gs.compute(b);

    auto size_reduce = [&](int i, int j) {
        mpz_class q = round_q(gs.mu[(size_t)i][(size_t)j]);
        if (q == 0) return;
        b.addmul_row(i, j, q);
        for (int k = 0; k < j; k++) gs.mu[(size_t)i][(size_t)k] -= mpq_class(q) * gs.mu[(size_t)j][(size_t)k];
        gs.mu[(size_t)i][(size_t)j] -= mpq_class(q);
    };

    int k = 1;
    int guard = 0;
    while (k < n) {
        if (++guard > 2000000) throw error("lll: failed to terminate");
        for (int j = k - 1; j >= 0; j--) size_reduce(k, j);
        mpq_class lhs = gs.Bnorm[(size_t)k];
        mpq_class rhs = (delta - gs.mu[(size_t)k][(size_t)k - 1] * gs.mu[(size_t)k][(size_t)k - 1]) *
                        gs.Bnorm[(size_t)k - 1];
        if (lhs >= rhs) {
            k++;
        } else {
            b.swap_rows(k, k - 1);
            gs.compute(b); // small ranks here; recomputing keeps this simple
            k = std::max(k - 1, 1);
        }
    }
    return {b, delta};
}

bool lll_condition_holds(const IntMat& basis, const mpq_class& delta)
{
    GramSchmidt gs;
    gs.compute(basis);
    for (int i = 0; i < basis.rows(); i++)
        for (int j = 0; j < i; j++) {
            mpq_class a = abs(gs.mu[(size_t)i][(size_t)j]);
            if (a > mpq_class(1, 2)) return false;
        }
    for (int i = 1; i < basis.rows(); i++) {
        mpq_class lhs = gs.Bnorm[(size_t)i] +
                        gs.mu[(size_t)i][(size_t)i - 1] * gs.mu[(size_t)i][(size_t)i - 1] *
                            gs.Bnorm[(size_t)i - 1];
        if (lhs < delta * gs.Bnorm[(size_t)i - 1]) return false;
    }
    return true;
}

namespace {

mpz_class round_to_mpz(const BigFloat& x)
{
    mpz_class out;
    mpfr_t t;
    mpfr_init2(t, mpfr_get_prec(x.raw()));
    mpfr_round(t, x.raw());
    mpfr_get_z(out.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
    return out;
}

} // namespace

std::optional<std::vector<mpz_class>> lindep(const std::vector<BigComplex>& values,
                                             const PrecisionContext& ctx,
                                             long max_coeff_digits)
{
    int n = (int)values.size();
    if (n < 2) return std::nullopt;
    // scale exponent digits - guard, floored so oversized guards cannot
    // starve the detection lattice
    long w = std::max(ctx.digits() - ctx.guard_digits(), ctx.digits() / 2);
    if (w < 10) throw domain_error("lindep: too few digits for detection");
    mpfr_prec_t bits = ctx.bits();

    BigFloat scale = BigFloat::from_long(10, bits);
    {
        // 10^w
        BigFloat acc = BigFloat::from_long(1, bits);
        BigFloat base = BigFloat::from_long(10, bits);
        long e = w;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        scale = acc;
    }

    IntMat lat(n, n + 2);
    for (int i = 0; i < n; i++) {
        lat.at(i, i) = 1;
        lat.at(i, n) = round_to_mpz(values[(size_t)i].re() * scale);
        lat.at(i, n + 1) = round_to_mpz(values[(size_t)i].im() * scale);
    }
    ReducedLattice red = lll(lat);

    // candidate = shortest reduced row; verify against the actual values
    double best_res = 1e300;
    std::vector<mpz_class> best;
    for (int i = 0; i < n; i++) {
        std::vector<mpz_class> c((size_t)n);
        bool zero = true;
        for (int j = 0; j < n; j++) {
            c[(size_t)j] = red.basis.at(i, j);
            if (c[(size_t)j] != 0) zero = false;
        }
        if (zero) continue;
        if (max_coeff_digits > 0) {
            mpz_class bound;
            mpz_ui_pow_ui(bound.get_mpz_t(), 10, (unsigned long)max_coeff_digits);
            bool ok = true;
            for (const auto& x : c)
                if (abs(x) > bound) ok = false;
            if (!ok) continue;
        }
        BigComplex acc(bits);
        for (int j = 0; j < n; j++)
            if (c[(size_t)j] != 0)
                acc += values[(size_t)j] * BigComplex::from_mpq(mpq_class(c[(size_t)j]), bits);
        double res = acc.log10_abs();
        if (res < best_res) {
            best_res = res;
            best = std::move(c);
        }
    }
    // conservative acceptance gap
    if (best.empty() || best_res > -(double)ctx.digits() / 4.0) return std::nullopt;
    return best;
}

std::optional<AlgdepResult> algdep(const BigComplex& v, int degree_bound,
                                   const PrecisionContext& ctx)
{
    if (degree_bound < 1) throw domain_error("algdep: degree bound must be positive");
    mpfr_prec_t bits = ctx.bits();
    std::vector<BigComplex> powers;
    BigComplex acc = BigComplex::from_long(1, bits);
    for (int k = 0; k <= degree_bound; k++) {
        powers.push_back(acc);
        if (k < degree_bound) acc *= v;
    }
    std::optional<std::vector<mpz_class>> rel = lindep(powers, ctx);
    if (!rel) return std::nullopt;

    std::vector<mpz_class> c = *rel;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.size() < 2) return std::nullopt;
    mpz_class cont = content(c);
    if (cont > 1)
        for (auto& x : c) x /= cont;
    if (c.back() < 0)
        for (auto& x : c) x = -x;

    AlgdepResult res;
    res.coeffs = c;
    res.palindromic = true;
    for (size_t i = 0; i < c.size(); i++)
        if (c[i] != c[c.size() - 1 - i]) res.palindromic = false;
    res.unit_constant_term = (abs(c.front()) == 1);

    // residual |p(v)| relative to the advertised bound
    BigComplex pv(bits);
    for (size_t i = c.size(); i-- > 0;) {
        pv *= v;
        pv += BigComplex::from_mpq(mpq_class(c[i]), bits);
    }
    res.log10_residual = pv.log10_abs();
    if (res.log10_residual > -(double)ctx.digits() / 4.0) return std::nullopt;
    return res;
}

} // namespace ellgr

#include "ellgr/numberfield.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace ellgr {

NumberField::NumberField(std::vector<mpz_class> min_poly) : p_(std::move(min_poly))
{
    d_ = (int)p_.size() - 1;
    if (d_ < 2) throw domain_error("NumberField: degree must be at least 2");
    if (p_[d_] != 1) throw domain_error("NumberField: minimal polynomial must be monic");
    pq_.resize(p_.size());
    for (size_t i = 0; i < p_.size(); i++) pq_[i] = mpq_class(p_[i]);
    pq_deriv_ = poly::derivative(pq_);
}

FieldElement NumberField::zero() const { return {std::vector<mpq_class>(d_, mpq_class(0))}; }
FieldElement NumberField::one() const
{
    FieldElement e = zero();
    e.c[0] = 1;
    return e;
}
FieldElement NumberField::gen() const
{
    FieldElement e = zero();
    e.c[1] = 1;
    return e;
}
FieldElement NumberField::from_rational(const mpq_class& q) const
{
    FieldElement e = zero();
    e.c[0] = q;
    return e;
}

FieldElement NumberField::add(const FieldElement& a, const FieldElement& b) const
{
    FieldElement r = a;
    for (int i = 0; i < d_; i++) r.c[i] += b.c[i];
    return r;
}
FieldElement NumberField::sub(const FieldElement& a, const FieldElement& b) const
{
    FieldElement r = a;
    for (int i = 0; i < d_; i++) r.c[i] -= b.c[i];
    return r;
}
FieldElement NumberField::neg(const FieldElement& a) const
{
    FieldElement r = a;
    for (int i = 0; i < d_; i++) r.c[i] = -r.c[i];
    return r;
}

FieldElement NumberField::mul(const FieldElement& a, const FieldElement& b) const
{
    poly::Rat prod = poly::mul(a.c, b.c);
    poly::Rat rem = poly::divmod(prod, pq_).second;
    FieldElement r = zero();
    for (size_t i = 0; i < rem.size(); i++) r.c[i] = rem[i];
    return r;
}

FieldElement NumberField::mul_scalar(const FieldElement& a, const mpq_class& s) const
{
    FieldElement r = a;
    for (int i = 0; i < d_; i++) r.c[i] *= s;
    return r;
}

FieldElement NumberField::inv(const FieldElement& a) const
{
    if (a.is_zero()) throw domain_error("NumberField: inverse of zero");
    poly::Rat g, u, v;
    poly::gcdext(poly::normalize(a.c), pq_, g, u, v);
    if (poly::degree(g) != 0)
        throw domain_error("NumberField: minimal polynomial is not irreducible");
    poly::Rat rem = poly::divmod(u, pq_).second;
    FieldElement r = zero();
    for (size_t i = 0; i < rem.size(); i++) r.c[i] = rem[i];
    return r;
}

FieldElement NumberField::div(const FieldElement& a, const FieldElement& b) const
{
    return mul(a, inv(b));
}

FieldElement NumberField::pow(const FieldElement& a, long n) const
{
    if (n == 0) return one();
    FieldElement base = n < 0 ? inv(a) : a;
    unsigned long e = n < 0 ? -(unsigned long)n : (unsigned long)n;
    FieldElement acc = one();
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

RatMat NumberField::mul_matrix(const FieldElement& a) const
{
    RatMat m(d_, d_);
    FieldElement col = a;
    for (int k = 0; k < d_; k++) {
        for (int i = 0; i < d_; i++) m.at(i, k) = col.c[i];
        if (k + 1 < d_) col = mul(col, gen());
    }
    return m;
}

mpq_class NumberField::norm(const FieldElement& a) const
{
    return det(mul_matrix(a));
}

mpq_class NumberField::trace(const FieldElement& a) const
{
    RatMat m = mul_matrix(a);
    mpq_class t(0);
    for (int i = 0; i < d_; i++) t += m.at(i, i);
    return t;
}

std::optional<mpq_class> NumberField::as_rational(const FieldElement& a) const
{
    for (int i = 1; i < d_; i++)
        if (a.c[i] != 0) return std::nullopt;
    return a.c[0];
}

namespace {

// Durand-Kerner at machine precision; good enough to seed Newton for the
// separable small-degree polynomials used here
std::vector<std::complex<double>> durand_kerner(const std::vector<mpz_class>& p)
{
    int d = (int)p.size() - 1;
    double scale = 0;
    for (int i = 0; i < d; i++) scale = std::max(scale, std::abs(p[i].get_d()));
    scale = std::max(1.0, std::pow(scale, 1.0 / d));
    std::vector<std::complex<double>> z(d);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> w = 1.0;
    for (int i = 0; i < d; i++) { w *= seed; z[i] = scale * w; }
    for (int iter = 0; iter < 500; iter++) {
        double moved = 0;
        for (int i = 0; i < d; i++) {
            std::complex<double> num = poly::eval_d(p, z[i]);
            std::complex<double> den = 1.0;
            for (int j = 0; j < d; j++)
                if (j != i) den *= z[i] - z[j];
            std::complex<double> delta = num / den;
            z[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-13 * scale) break;
    }
    return z;
}

} // namespace

void NumberField::refine_roots(mpfr_prec_t bits) const
{
    std::vector<std::complex<double>> seeds = durand_kerner(p_);

    // classify: d-2 real roots, one conjugate pair
    std::vector<std::complex<double>> reals, uppers;
    for (auto z : seeds) {
        if (std::abs(z.imag()) < 1e-6 * (1.0 + std::abs(z))) reals.push_back(z);
        else if (z.imag() > 0) uppers.push_back(z);
    }
    if ((int)reals.size() != d_ - 2 || uppers.size() != 1)
        throw domain_error("NumberField: polynomial is not ATR (need exactly one complex pair)");
    std::sort(reals.begin(), reals.end(),
              [](auto a, auto b) { return a.real() < b.real(); });

    mpfr_prec_t target = bits + 32;
    std::vector<BigComplex> out;

    auto polish_real = [&](double seed) {
        BigFloat x = BigFloat::from_double(seed, 64);
        for (mpfr_prec_t p = 64; p < 4 * target; p *= 2) {
            mpfr_prec_t cur = std::min(p * 2, target);
            BigFloat xx(cur);
            mpfr_set(xx.raw(), x.raw(), MPFR_RNDN);
            for (int it = 0; it < 6; it++) {
                // Newton step in real arithmetic keeps Im exactly 0
                BigComplex z = BigComplex::from_real(xx);
                BigComplex f = poly::eval(pq_, z);
                BigComplex fp = poly::eval(pq_deriv_, z);
                BigFloat step = f.re() / fp.re();
                mpfr_sub(xx.raw(), xx.raw(), step.raw(), MPFR_RNDN);
            }
            x = xx;
            if (cur >= target) break;
        }
        return BigComplex::from_real(x);
    };
    auto polish_complex = [&](std::complex<double> seed) {
        BigComplex z(BigFloat::from_double(seed.real(), 64), BigFloat::from_double(seed.imag(), 64));
        for (mpfr_prec_t p = 64; p < 4 * target; p *= 2) {
            mpfr_prec_t cur = std::min(p * 2, target);
            BigComplex zz{BigFloat(cur), BigFloat(cur)};
            mpfr_set(zz.re().raw(), z.re().raw(), MPFR_RNDN);
            mpfr_set(zz.im().raw(), z.im().raw(), MPFR_RNDN);
            for (int it = 0; it < 6; it++) {
                BigComplex f = poly::eval(pq_, zz);
                BigComplex fp = poly::eval(pq_deriv_, zz);
                zz = zz - f / fp;
            }
            z = zz;
            if (cur >= target) break;
        }
        return z;
    };

    out.reserve(d_);
    for (auto z : reals) out.push_back(polish_real(z.real()));
    BigComplex up = polish_complex(uppers[0]);
    if (!(up.im() > BigFloat(64))) throw domain_error("NumberField: complex root did not stay in the upper half-plane");
    out.push_back(up);
    out.push_back(conj(up));

    // residual sanity: |P(root)| must be tiny at the refined precision
    for (const auto& z : out) {
        BigComplex val = poly::eval(pq_, z);
        if (val.log10_abs() > -(double)bits * 0.30102999566398120 + 10.0)
            throw domain_error("NumberField: root refinement failed to converge");
    }

    roots_ = std::move(out);
    root_bits_ = bits;
}

std::vector<BigComplex> NumberField::roots(mpfr_prec_t bits) const
{
    std::lock_guard<std::mutex> lock(root_mutex_);
    if (root_bits_ < bits) refine_roots(bits);
    if (root_bits_ == bits) return roots_;
    // round the cached higher-precision roots down
    std::vector<BigComplex> out;
    out.reserve(d_);
    for (const auto& z : roots_) {
        BigComplex w{BigFloat(bits), BigFloat(bits)};
        mpfr_set(w.re().raw(), z.re().raw(), MPFR_RNDN);
        mpfr_set(w.im().raw(), z.im().raw(), MPFR_RNDN);
        out.push_back(std::move(w));
    }
    return out;
}

BigComplex NumberField::embed(const FieldElement& a, int which, mpfr_prec_t bits) const
{
    if (which < 0 || which >= d_) throw domain_error("embed: bad embedding index");
    std::vector<BigComplex> rs = roots(bits);
    poly::Rat pc(a.c.begin(), a.c.end());
    return poly::eval(poly::normalize(std::move(pc)), rs[which]);
}

BigComplex NumberField::embed_complex(const FieldElement& a, mpfr_prec_t bits) const
{
    return embed(a, d_ - 2, bits);
}

int NumberField::orientation(const std::vector<FieldElement>& basis, mpfr_prec_t bits) const
{
    if ((int)basis.size() != d_) throw domain_error("orientation: need a full basis");
    std::vector<BigComplex> rs = roots(bits);
    // complex determinant by Gaussian elimination with partial pivoting
    std::vector<std::vector<BigComplex>> m(d_, std::vector<BigComplex>(d_));
    for (int j = 0; j < d_; j++)
        for (int k = 0; k < d_; k++) {
            poly::Rat pc(basis[k].c.begin(), basis[k].c.end());
            m[j][k] = poly::eval(poly::normalize(std::move(pc)), rs[j]);
        }
    BigComplex detv = BigComplex::from_long(1, bits);
    for (int col = 0; col < d_; col++) {
        int piv = -1;
        double best = -1e300;
        for (int i = col; i < d_; i++) {
            double mag = m[i][col].log10_abs();
            if (mag > best) { best = mag; piv = i; }
        }
        if (piv != col) { std::swap(m[piv], m[col]); detv = -detv; }
        if (m[col][col].is_zero()) throw domain_error("orientation: singular basis");
        detv *= m[col][col];
        BigComplex inv = reciprocal(m[col][col]);
        for (int i = col + 1; i < d_; i++) {
            if (m[i][col].is_zero()) continue;
            BigComplex f = m[i][col] * inv;
            for (int j = col; j < d_; j++) m[i][j] = m[i][j] - f * m[col][j];
        }
    }
    // i*det must be real
    BigComplex idet(-detv.im(), detv.re());
    double re_mag = idet.re().log10_abs();
    double im_mag = idet.im().log10_abs();
    if (re_mag < -300.0) throw domain_error("orientation: determinant too close to zero");
    if (im_mag > re_mag - 5.0 && im_mag > -((double)bits * 0.301) / 2.0)
        throw domain_error("orientation: i*det is not real, embeddings are inconsistent");
    return idet.re().sign() > 0 ? 1 : -1;
}

std::vector<mpq_class> module_coords(const NumberField& K, const FieldElement& el,
                                     const ZModuleBasis& M)
{
    int d = K.degree();
    if ((int)M.basis.size() != d) throw domain_error("module_coords: basis must have full rank");
    RatMat A(d, d);
    for (int j = 0; j < d; j++)
        for (int i = 0; i < d; i++) A.at(i, j) = M.basis[j].c[i];
    std::vector<mpq_class> b(el.c.begin(), el.c.end());
    return solve(A, b);
}

bool module_contains(const NumberField& K, const FieldElement& el, const ZModuleBasis& M)
{
    for (const auto& q : module_coords(K, el, M))
        if (q.get_den() != 1) return false;
    return true;
}

mpz_class module_index(const NumberField& K, const ZModuleBasis& M, const ZModuleBasis& N)
{
    int d = K.degree();
    RatMat T(d, d);
    for (int j = 0; j < d; j++) {
        std::vector<mpq_class> co = module_coords(K, M.basis[j], N);
        for (int i = 0; i < d; i++) {
            if (co[i].get_den() != 1)
                throw domain_error("module_index: first module is not contained in the second");
            T.at(i, j) = co[i];
        }
    }
    mpq_class dd = det(T);
    if (dd == 0) throw domain_error("module_index: degenerate module");
    mpq_class a = abs(dd);
    return a.get_num();
}

mpq_class module_norm(const NumberField& K, const ZModuleBasis& M, const ZModuleBasis& OK)
{
    int d = K.degree();
    RatMat T(d, d);
    for (int j = 0; j < d; j++) {
        std::vector<mpq_class> co = module_coords(K, M.basis[j], OK);
        for (int i = 0; i < d; i++) T.at(i, j) = co[i];
    }
    return abs(det(T));
}

std::pair<mpz_class, FieldElement> primitive_part(const NumberField& K, const FieldElement& el,
                                                  const ZModuleBasis& M)
{
    if (el.is_zero()) throw domain_error("primitive_part: zero element");
    std::vector<mpq_class> co = module_coords(K, el, M);
    std::vector<mpz_class> ic(co.size());
    for (size_t i = 0; i < co.size(); i++) {
        if (co[i].get_den() != 1) throw domain_error("primitive_part: element not in module");
        ic[i] = co[i].get_num();
    }
    mpz_class m = content(ic);
    bool flip = false;
    // m > 0; primitive part keeps the direction of el
    FieldElement hp = K.mul_scalar(el, mpq_class(1, m));
    (void)flip;
    return {m, hp};
}

bool admissible_check(const NumberField& K, const FieldElement& h, const mpz_class& q,
                      const mpz_class& N, const ZModuleBasis& L, const ZModuleBasis& aL)
{
    if (mpz_probab_prime_p(N.get_mpz_t(), 40) == 0)
        throw domain_error("admissible_check: non-prime smoothing norm is not supported");
    if (module_index(K, L, aL) != N)
        throw domain_error("admissible_check: [a^-1 L : L] != N");
    // h/q = 1 mod L
    FieldElement hq = K.mul_scalar(h, mpq_class(1, q));
    if (!module_contains(K, K.sub(hq, K.one()), L)) return false;
    // h/N generates the order-N cyclic group a^-1 L / L
    FieldElement hN = K.mul_scalar(h, mpq_class(1, N));
    if (!module_contains(K, hN, aL)) return false;
    if (module_contains(K, hN, L)) return false;
    return true;
}

} // namespace ellgr

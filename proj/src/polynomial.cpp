#include "ellgr/polynomial.hpp"

namespace ellgr {
namespace poly {

Rat normalize(Rat p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

int degree(const Rat& p)
{
    return (int)p.size() - 1;
}

Rat add(const Rat& a, const Rat& b)
{
    Rat r(std::max(a.size(), b.size()), mpq_class(0));
    for (size_t i = 0; i < a.size(); i++) r[i] += a[i];
    for (size_t i = 0; i < b.size(); i++) r[i] += b[i];
    return normalize(std::move(r));
}

Rat sub(const Rat& a, const Rat& b)
{
    Rat r(std::max(a.size(), b.size()), mpq_class(0));
    for (size_t i = 0; i < a.size(); i++) r[i] += a[i];
    for (size_t i = 0; i < b.size(); i++) r[i] -= b[i];
    return normalize(std::move(r));
}

Rat mul(const Rat& a, const Rat& b)
{
    if (a.empty() || b.empty()) return {};
    Rat r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); i++) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); j++) r[i + j] += a[i] * b[j];
    }
    return normalize(std::move(r));
}

Rat scale(const Rat& a, const mpq_class& c)
{
    if (c == 0) return {};
    Rat r = a;
    for (auto& x : r) x *= c;
    return r;
}

std::pair<Rat, Rat> divmod(const Rat& a, const Rat& b)
{
    if (b.empty()) throw domain_error("poly::divmod: division by zero polynomial");
    Rat rem = a, quo;
    int db = degree(b);
    if (degree(a) >= db) quo.assign(a.size() - b.size() + 1, mpq_class(0));
    mpq_class lead_inv = 1 / b.back();
    while (degree(rem) >= db) {
        int k = degree(rem) - db;
        mpq_class c = rem.back() * lead_inv;
        quo[k] = c;
        for (int i = 0; i <= db; i++) rem[k + i] -= c * b[i];
        rem = normalize(std::move(rem));
    }
    return {normalize(std::move(quo)), std::move(rem)};
}

Rat derivative(const Rat& a)
{
    if (a.size() <= 1) return {};
    Rat r(a.size() - 1);
    for (size_t i = 1; i < a.size(); i++) r[i - 1] = a[i] * mpq_class((long)i);
    return r;
}

static Rat make_monic(Rat p)
{
    if (p.empty()) return p;
    mpq_class inv = 1 / p.back();
    for (auto& c : p) c *= inv;
    return p;
}

Rat gcd(Rat a, Rat b)
{
    a = normalize(std::move(a));
    b = normalize(std::move(b));
    while (!b.empty()) {
        Rat r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(std::move(a));
}

void gcdext(const Rat& a, const Rat& b, Rat& g, Rat& u, Rat& v)
{
    Rat r0 = normalize(a), r1 = normalize(b);
    Rat s0 = {mpq_class(1)}, s1 = {};
    Rat t0 = {}, t1 = {mpq_class(1)};
    while (!r1.empty()) {
        auto [q, r2] = divmod(r0, r1);
        Rat s2 = sub(s0, mul(q, s1));
        Rat t2 = sub(t0, mul(q, t1));
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.empty()) throw domain_error("poly::gcdext: gcd of zero polynomials");
    mpq_class inv = 1 / r0.back();
    g = scale(r0, inv);
    u = scale(s0, inv);
    v = scale(t0, inv);
}

BigComplex eval(const Rat& p, const BigComplex& x)
{
    BigComplex acc(x.prec());
    for (size_t i = p.size(); i-- > 0;) {
        acc *= x;
        acc += BigComplex::from_mpq(p[i], x.prec());
    }
    return acc;
}

BigComplex eval(const std::vector<mpz_class>& p, const BigComplex& x)
{
    BigComplex acc(x.prec());
    for (size_t i = p.size(); i-- > 0;) {
        acc *= x;
        acc += BigComplex::from_mpq(mpq_class(p[i]), x.prec());
    }
    return acc;
}

std::complex<double> eval_d(const std::vector<mpz_class>& p, std::complex<double> x)
{
    std::complex<double> acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + std::complex<double>(p[i].get_d());
    return acc;
}

} // namespace poly
} // namespace ellgr

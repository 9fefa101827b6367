#include "ellgr/bernoulli.hpp"

#include <functional>
#include <mutex>

namespace ellgr {

namespace {

std::mutex bern_mutex;
std::vector<mpq_class> bern_cache; // grows monotonically under the lock

void extend_bernoulli(unsigned k)
{
    if (bern_cache.empty()) {
        bern_cache.emplace_back(1);                // B_0
        bern_cache.emplace_back(mpq_class(-1, 2)); // B_1
    }
    while (bern_cache.size() <= k) {
        unsigned m = (unsigned)bern_cache.size();
        // recurrence sum_{j=0}^{m} C(m+1,j) B_j = 0
        mpq_class acc(0);
        mpz_class binom(1); // C(m+1, 0)
        for (unsigned j = 0; j < m; j++) {
            acc += mpq_class(binom) * bern_cache[j];
            binom *= (long)(m + 1 - j);
            binom /= (long)(j + 1);
        }
        mpq_class b = -acc / mpq_class(binom);
        b.canonicalize();
        bern_cache.push_back(b);
    }
}

} // namespace

mpq_class bernoulli_number(unsigned k)
{
    std::lock_guard<std::mutex> lock(bern_mutex);
    extend_bernoulli(k);
    return bern_cache[k];
}

BigComplex multi_bernoulli_star(unsigned d, unsigned n, const BigComplex& z,
                                const std::vector<BigComplex>& omegas)
{
    if (omegas.size() != d)
        throw domain_error("multi_bernoulli_star: expected d omegas");
    for (const auto& w : omegas)
        if (w.is_zero()) throw domain_error("multi_bernoulli_star: omega = 0");

    mpfr_prec_t prec = z.prec();
    for (const auto& w : omegas) prec = std::max(prec, w.prec());

    // power tables z^m and w_j^k for 0 <= m,k <= n
    std::vector<BigComplex> zp(n + 1);
    zp[0] = BigComplex::from_long(1, prec);
    for (unsigned m = 1; m <= n; m++) zp[m] = zp[m - 1] * z;
    std::vector<std::vector<BigComplex>> wp(d);
    for (unsigned j = 0; j < d; j++) {
        wp[j].resize(n + 1);
        wp[j][0] = BigComplex::from_long(1, prec);
        for (unsigned k = 1; k <= n; k++) wp[j][k] = wp[j][k - 1] * omegas[j];
    }

    std::vector<mpz_class> fact(n + 1);
    fact[0] = 1;
    for (unsigned k = 1; k <= n; k++) fact[k] = fact[k - 1] * (long)k;

    // expand n! [t^n] e^{zt} prod_j sum_k B_k w_j^k t^k / k! over all
    // compositions m + k_1 + ... + k_d = n, exact multinomial coefficients
    BigComplex total(prec);
    std::vector<unsigned> ks(d, 0);
    std::function<void(unsigned, unsigned)> walk = [&](unsigned j, unsigned rem) {
        if (j == d) {
            unsigned m = rem;
            mpq_class coeff = mpq_class(fact[n]) / mpq_class(fact[m]);
            for (unsigned i = 0; i < d; i++) {
                mpq_class b = bernoulli_number(ks[i]);
                if (b == 0) return;
                coeff *= b / mpq_class(fact[ks[i]]);
            }
            coeff.canonicalize();
            BigComplex mono = zp[m];
            for (unsigned i = 0; i < d; i++)
                if (ks[i] > 0) mono *= wp[i][ks[i]];
            total += BigComplex::from_mpq(coeff, prec) * mono;
            return;
        }
        for (unsigned k = 0; k <= rem; k++) {
            ks[j] = k;
            walk(j + 1, rem - k);
        }
        ks[j] = 0;
    };
    walk(0, n);
    return total;
}

BigComplex multi_bernoulli(unsigned d, unsigned n, const BigComplex& z,
                           const std::vector<BigComplex>& omegas)
{
    BigComplex star = multi_bernoulli_star(d, n, z, omegas);
    BigComplex denom = BigComplex::from_long(1, star.prec());
    for (const auto& w : omegas) denom *= w;
    return star / denom;
}

} // namespace ellgr

#ifndef ELLGR_BERNOULLI_HPP
#define ELLGR_BERNOULLI_HPP

#include <vector>

#include "ellgr/bigcomplex.hpp"

namespace ellgr {

// exact Bernoulli number, convention B_1 = -1/2 (from t/(e^t - 1))
mpq_class bernoulli_number(unsigned k);

// B*_{d,n}(z, w_1..w_d) = n! [t^n] e^{zt} prod_j (w_j t)/(e^{w_j t} - 1).
// Coefficients are exact rationals; the complex arguments are substituted only
// at the end, so the polynomial identities hold before any rounding.
BigComplex multi_bernoulli_star(unsigned d, unsigned n, const BigComplex& z,
                                const std::vector<BigComplex>& omegas);

// rescaled version (prod w_j)^-1 B*_{d,n}
BigComplex multi_bernoulli(unsigned d, unsigned n, const BigComplex& z,
                           const std::vector<BigComplex>& omegas);

} // namespace ellgr

#endif

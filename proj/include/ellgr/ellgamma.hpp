#ifndef ELLGR_ELLGAMMA_HPP
#define ELLGR_ELLGAMMA_HPP

#include <vector>

#include "ellgr/bernoulli.hpp"
#include "ellgr/bigcomplex.hpp"
#include "ellgr/prec.hpp"

namespace ellgr {

// theta(z, tau) = prod_{m>=0} (1 - e2pi((m+1)tau - z))(1 - e2pi(m tau + z)),
// computed through the triple-product sum; entire in z, needs Im(tau) > 0
BigComplex theta(const BigComplex& z, const BigComplex& tau, const PrecisionContext& ctx);
std::vector<BigComplex> theta_multi(const std::vector<BigComplex>& zs, const BigComplex& tau,
                                    const PrecisionContext& ctx);

// G_r on the center strip 0 < Im(z) < sum Im(tau_j), all Im(tau_j) > 0,
// via the exponential sum with incremental q-powers
BigComplex gr_center_strip(int r, const BigComplex& z, const std::vector<BigComplex>& taus,
                           const PrecisionContext& ctx);

// Full-domain G_r: flips tau_j with negative imaginary part, reduces Re(z)
// mod 1, walks z into the center strip through the shift relation and
// evaluates; signals pole_error when a reduction divisor degenerates.
BigComplex gr(int r, const BigComplex& z, const std::vector<BigComplex>& taus,
              const PrecisionContext& ctx, int threads = 1);

// Batched variant sharing the q-power stream across many z for the same taus.
std::vector<BigComplex> gr_multi(int r, std::vector<BigComplex> zs,
                                 std::vector<BigComplex> taus, const PrecisionContext& ctx,
                                 int threads = 1);

// |prod_j G_r(z/w_j, (w_n/w_j)_{n != j}) - exp(-2 pi i B_{r+2,r+2}(z,w)/(r+2)!)|
BigFloat modular_identity_residual(int r, const BigComplex& z,
                                   const std::vector<BigComplex>& omegas,
                                   const PrecisionContext& ctx);

// |G_r(conj z, conj taus) - conj(G_r(z, taus))^{(-1)^r}|
BigFloat conjugation_residual(int r, const BigComplex& z, const std::vector<BigComplex>& taus,
                              const PrecisionContext& ctx);

// the sine/cosine exponential-sum form, valid for |Im(2z - |tau|)| < sum |Im tau_j|
BigComplex gr_exponential_sum(int r, const BigComplex& z, const std::vector<BigComplex>& taus,
                              const PrecisionContext& ctx);

} // namespace ellgr

#endif

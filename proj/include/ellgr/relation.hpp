#ifndef ELLGR_RELATION_HPP
#define ELLGR_RELATION_HPP

#include <optional>
#include <vector>

#include "ellgr/bigcomplex.hpp"
#include "ellgr/intmat.hpp"

namespace ellgr {

struct ReducedLattice {
    IntMat basis;     // rows, LLL-reduced
    mpq_class delta;  // Lovasz parameter actually used
};

// exact-rational LLL on the rows of basis; delta in (1/4, 1)
ReducedLattice lll(const IntMat& basis, const mpq_class& delta = mpq_class(99, 100));

// true if the rows satisfy size reduction and the Lovasz condition for delta
bool lll_condition_holds(const IntMat& basis, const mpq_class& delta);

// small integer relation sum c_k v_k ~ 0, or nullopt; the values enter the
// lattice as two scaled rows (real and imaginary parts)
std::optional<std::vector<mpz_class>> lindep(const std::vector<BigComplex>& values,
                                             const PrecisionContext& ctx,
                                             long max_coeff_digits = 0);

struct AlgdepResult {
    std::vector<mpz_class> coeffs; // ascending, primitive, positive leading
    bool palindromic = false;
    bool unit_constant_term = false; // constant term +-1
    double log10_residual = 0;
};

// integer polynomial of degree <= degree_bound nearly vanishing at v
std::optional<AlgdepResult> algdep(const BigComplex& v, int degree_bound,
                                   const PrecisionContext& ctx);

} // namespace ellgr

#endif

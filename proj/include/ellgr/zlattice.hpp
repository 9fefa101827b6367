#ifndef ELLGR_ZLATTICE_HPP
#define ELLGR_ZLATTICE_HPP

#include <map>
#include <utility>
#include <vector>

#include "ellgr/bigcomplex.hpp"
#include "ellgr/ellgamma.hpp"
#include "ellgr/intmat.hpp"
#include "ellgr/prec.hpp"

namespace ellgr {

// r+1 independent primitive forms in a rank r+2 lattice together with the
// minimal uniform positive dual family: a_forms * alphas^T = t I, gamma the
// primitive direction of det(a_0..a_r, .) scaled by s.
struct GeomFamily {
    int r = 0;
    IntMat a_forms;                 // (r+1) x (r+2), rows a_j
    IntMat alphas;                  // (r+1) x (r+2), rows alpha_j
    std::vector<mpz_class> gamma;   // primitive, size r+2
    mpz_class s, t;
    // Smith divisors of the stacked (a_forms | c) matrix, ascending
    std::vector<mpz_class> divisors;
    // for each prime p | t, an index j with alpha_j - n gamma never in pL
    std::map<mpz_class, int> primitivity_witness;
};

// trial division; throws if a composite cofactor survives the bound
std::vector<mpz_class> factorize(const mpz_class& n);

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b);
BigComplex eval_form(const std::vector<mpz_class>& form, const std::vector<BigComplex>& x);

// the linear form det(rows, .) as a coordinate vector
std::vector<mpz_class> cross_form(const IntMat& rows);

GeomFamily primitive_dual_family(const IntMat& a_forms);

// representatives of L / (Z gamma + sum Z alpha_j), normalized into the box
// 0 <= a_j(delta) < t
std::vector<std::vector<mpz_class>> coset_reps(const GeomFamily& fam);

// prod over the cosets of G_r((w + delta(x))/gamma(x), alpha(x)/gamma(x))
BigComplex geometric_gr(const GeomFamily& fam, const BigComplex& w,
                        const std::vector<BigComplex>& x, const PrecisionContext& ctx,
                        int threads = 1);

// geometric Bernoulli sum over F for a full family of r+2 rows; returns
// (star, rescaled) where rescaled divides by prod_j alpha_j(x)
std::pair<BigComplex, BigComplex> geometric_bernoulli(const IntMat& a_full, const BigComplex& w,
                                                      const std::vector<BigComplex>& x,
                                                      const PrecisionContext& ctx);

// basis of Z^dim adapted to a flag of independent vectors: rows e_0..e_{dim-1}
// with flag_j = sum_{k <= j} c_{jk} e_k and c_{jj} > 0
struct AdaptedBasis {
    IntMat basis;                 // rows are the basis vectors
    std::vector<mpz_class> diag;  // c_{jj}, one per flag vector
};
AdaptedBasis adapted_basis(const std::vector<std::vector<mpz_class>>& flags, int dim);

} // namespace ellgr

#endif

#ifndef ELLGR_NUMBERFIELD_HPP
#define ELLGR_NUMBERFIELD_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ellgr/bigcomplex.hpp"
#include "ellgr/intmat.hpp"
#include "ellgr/polynomial.hpp"
#include "ellgr/prec.hpp"

namespace ellgr {

// element of K = Q[x]/(P) as rational coordinates in the power basis
struct FieldElement {
    std::vector<mpq_class> c;

    bool is_zero() const
    {
        for (const auto& x : c) if (x != 0) return false;
        return true;
    }
};

// K = Q[x]/(P) for a monic irreducible integer P with exactly one pair of
// complex roots.  Embedding order: real roots ascending as sigma_1..sigma_r,
// then the upper half-plane complex root sigma_{r+1} = sigma_C, then its
// conjugate.
class NumberField {
  public:
    explicit NumberField(std::vector<mpz_class> min_poly);

    int degree() const { return d_; }
    int unit_rank() const { return d_ - 2; }
    const std::vector<mpz_class>& min_poly() const { return p_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement gen() const;
    FieldElement from_rational(const mpq_class& q) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement mul_scalar(const FieldElement& a, const mpq_class& s) const;
    FieldElement inv(const FieldElement& a) const;
    FieldElement div(const FieldElement& a, const FieldElement& b) const;
    FieldElement pow(const FieldElement& a, long n) const;

    // matrix of multiplication by a in the power basis (column k = a * x^k)
    RatMat mul_matrix(const FieldElement& a) const;
    mpq_class norm(const FieldElement& a) const;
    mpq_class trace(const FieldElement& a) const;
    std::optional<mpq_class> as_rational(const FieldElement& a) const;

    // all d roots at >= bits precision, in the fixed embedding order
    std::vector<BigComplex> roots(mpfr_prec_t bits) const;
    BigComplex embed(const FieldElement& a, int which, mpfr_prec_t bits) const;
    // sigma_C, the upper half-plane complex embedding
    BigComplex embed_complex(const FieldElement& a, mpfr_prec_t bits) const;

    // sign of i*det(sigma_j(e_k)); throws if the determinant is not real or
    // too close to zero
    int orientation(const std::vector<FieldElement>& basis, mpfr_prec_t bits) const;

  private:
    std::vector<mpz_class> p_;
    poly::Rat pq_, pq_deriv_;
    int d_;

    mutable std::mutex root_mutex_;
    mutable mpfr_prec_t root_bits_ = 0;
    mutable std::vector<BigComplex> roots_;

    void refine_roots(mpfr_prec_t bits) const;
};

// rank-d Z-module inside K given by a basis, with a role tag
struct ZModuleBasis {
    enum class Role { ring_of_integers, fractional_ideal, sublattice };
    std::vector<FieldElement> basis;
    Role role = Role::fractional_ideal;
};

// exact coordinates of el in the basis of M
std::vector<mpq_class> module_coords(const NumberField& K, const FieldElement& el,
                                     const ZModuleBasis& M);
bool module_contains(const NumberField& K, const FieldElement& el, const ZModuleBasis& M);
// index [N : M] for M a finite-index submodule of N
mpz_class module_index(const NumberField& K, const ZModuleBasis& M, const ZModuleBasis& N);
// |det| of the basis of M over the basis of OK
mpq_class module_norm(const NumberField& K, const ZModuleBasis& M, const ZModuleBasis& OK);
// el = m h' with h' primitive in M and m > 0
std::pair<mpz_class, FieldElement> primitive_part(const NumberField& K, const FieldElement& el,
                                                  const ZModuleBasis& M);

// h/q = 1 mod L and h/N generates the cyclic group a^-1 L / L of prime order N
bool admissible_check(const NumberField& K, const FieldElement& h, const mpz_class& q,
                      const mpz_class& N, const ZModuleBasis& L, const ZModuleBasis& aL);

} // namespace ellgr

#endif

#ifndef ELLGR_ARITHMETIC_HPP
#define ELLGR_ARITHMETIC_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellgr/numberfield.hpp"
#include "ellgr/zlattice.hpp"

namespace ellgr {

// Geometric data attached to one unit bracket (u_1..u_r) and one admissible
// vector h in L: the adapted basis, the dual family with its invariants
// (lambda, s, t), the h = 1 counterparts over O_K (content lambda~, overflow
// t~), the level l with its sign, and the integer shifts m_j that express
// alpha_j / gamma through the tilde family.
struct GeomSetup {
    int r = 0;
    mpz_class q, smoothing_norm;

    FieldElement h, h_prime;
    mpz_class m;          // h = m h'
    int gamma_sign = 1;   // gamma = gamma_sign * h'

    std::vector<FieldElement> adapted;      // positive basis e_0 = h', ..., e_{r+1} of L
    std::vector<FieldElement> alphas;       // alpha_j in L
    std::vector<FieldElement> alphas_tilde; // tilde alpha_j in O_K
    mpz_class lambda, s, t;
    mpz_class lambda_tilde, s_tilde, t_tilde;
    mpz_class level;      // l
    int eps_sign = 1;     // sign in the level identity
    std::vector<mpz_class> m_shift;

    // exact parameters of the evaluation: tau_j = alpha_j/gamma and the
    // coset offsets delta/gamma for L/M
    std::vector<FieldElement> tau_elements;
    std::vector<FieldElement> coset_offsets;

    mpz_class coset_count() const { return (mpz_class)coset_offsets.size(); }
};

// units e_1..e_r of O_{f,1}^x+; bracket(rho) = (u_1, ..., u_r) with
// u_j = prod_{i <= j} e_{rho(i)}
struct UnitSystem {
    std::vector<FieldElement> fundamental;
    std::vector<FieldElement> bracket(const NumberField& K, const std::vector<int>& rho) const;
};

// the full geometric setup of one (bracket, h) pair
GeomSetup geometric_setup(const NumberField& K, const ZModuleBasis& L, const ZModuleBasis& OK,
                          const std::vector<FieldElement>& bracket_units, const FieldElement& h,
                          const mpz_class& q, const mpz_class& N,
                          const PrecisionContext& ctx);

struct StarReport {
    bool content_one = false;        // lambda~ == 1
    bool overflow_coprime = false;   // gcd(t~, q N N(b)) == 1
    bool alphas_nonreal = false;     // sigma_C(alpha~_j) off the real axis
    bool all() const { return content_one && overflow_coprime && alphas_nonreal; }
};
StarReport check_star_conditions(const NumberField& K, const GeomSetup& tilde_setup,
                                 const mpz_class& q, const mpz_class& N,
                                 const mpz_class& norm_b, const PrecisionContext& ctx);

struct TargetIdealData {
    mpz_class p;
    int vp_t_tilde = 0;
    int vp_s_tilde = 0;
    ZModuleBasis ideal;       // I
    ZModuleBasis complement;  // I^c with I I^c = p^{vp_t_tilde} O_K
    std::vector<ZModuleBasis> J;  // divisors of I^c
    std::vector<int> w;           // I J_k in p^{w_k} O_K, sum w_k = vp_s_tilde
};
bool verify_target_ideal(const NumberField& K, const TargetIdealData& data,
                         const std::vector<FieldElement>& bracket_units,
                         const std::vector<FieldElement>& alphas_tilde,
                         const ZModuleBasis& OK, int search_radius = 6);

struct HelperIdealData {
    mpz_class p;
    ZModuleBasis ideal;
    ZModuleBasis complement;
};
// squarefree complement norm, and on the computed setup v_p(l) = 1, v_p(t) = 0
bool verify_helper_ideal(const NumberField& K, const HelperIdealData& data,
                         const ZModuleBasis& OK, const GeomSetup& setup);

struct ZfOneElement {
    long n;                      // class in (Z/q)^x, 0 < n < q
    int chi;                     // Norm(eps) = +-1
    int torsion_sign;
    std::vector<long> exponents; // eps = torsion_sign * prod eps_i^{k_i}
};
struct ZfOneSet {
    std::vector<ZfOneElement> elements; // ascending in n
    bool complete = true;               // search certified every residue it found
};
ZfOneSet build_zf_one(const NumberField& K, const ZModuleBasis& f_ideal, const mpz_class& q,
                      const UnitSystem& units, long search_radius = 5);

// m(r, N): 4 for N = 2, N for 3 <= N <= r+3, else 1
long smoothing_order(int r, const mpz_class& N);

// sg = sign det(log sigma_j(eps_k)); mu_rho = nu_rho = sg * sgn(rho)
int unit_system_sign(const NumberField& K, const UnitSystem& units, const PrecisionContext& ctx);

// G^mu(u_1..u_r; n h)^{mu^r} as the coset product of smoothed quotients, then
// the mu^r power is removed so the return value is G^mu(u; n h) itself.
// Negative n is folded through the unit -1.
BigComplex arithmetic_gr(const NumberField& K, const GeomSetup& setup, int mu, long n,
                         const PrecisionContext& ctx, int threads = 1);

// batched version: the periods are shared across the whole (mu, n) list, so
// the q-power stream of the series is paid once for the entire Z_f^1 orbit
std::vector<BigComplex> arithmetic_gr_batch(const NumberField& K, const GeomSetup& setup,
                                            const std::vector<std::pair<int, long>>& mun,
                                            const PrecisionContext& ctx, int threads = 1);

// one factor G^{mu_rho chi(n)}(u; n h_rho)^{chi(n) nu_rho}
BigComplex zf_one_factor(const NumberField& K, const GeomSetup& setup, int mu_rho, int nu_rho,
                         const ZfOneElement& el, const PrecisionContext& ctx, int threads = 1);

// prod over permutations and Z_f^1, combined in lexicographic (rho, n) order
BigComplex i_r_product(const NumberField& K, const std::vector<GeomSetup>& setups_per_rho,
                       const std::vector<int>& mu, const std::vector<int>& nu,
                       const ZfOneSet& zf, const PrecisionContext& ctx, int threads = 1);

// raw smoothed quotient (G_r(w, taus)^N / G_r(N w, N taus))^{outer}; the
// degenerate r = 0 entry point used by fixtures that carry explicit parameters
BigComplex smoothed_quotient(int r, const BigComplex& w, const std::vector<BigComplex>& taus,
                             long N, int outer, const PrecisionContext& ctx, int threads = 1);

} // namespace ellgr

#endif

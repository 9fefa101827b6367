#ifndef ELLGR_FIXTURE_HPP
#define ELLGR_FIXTURE_HPP

#include <optional>
#include <string>
#include <vector>

#include "ellgr/arithmetic.hpp"

namespace ellgr {

// Declarative description of one worked example: the field, the ideal data
// as explicit Z-bases, the admissible vectors, and the expected quantities
// as printed decimal prefixes.  Schema version 1, JSON on disk.
struct ValueSpec {
    int mu = -1;
    long n = 1;
    int outer = 1;
};

struct Check {
    std::string name;
    std::string note;
    // value | rho_value | rho_product | full_product | power | log_abs_sq |
    // algdep | invariance
    std::string type;
    ValueSpec spec, rhs_spec;   // value / invariance
    int rho_index = 0;          // rho_value
    std::string of = "rho_product"; // power / algdep target
    long power_m = 1;
    std::string re, im, value;  // expected decimal strings as printed
    long match_digits = 7;
    int degree = 0;
    std::vector<mpz_class> coeffs;
    double tol_log10 = 0;       // invariance / algdep residual bound
};

struct TargetIdealFx {
    mpz_class p;
    int vp_t_tilde = 1, vp_s_tilde = 1;
    std::vector<std::vector<mpq_class>> ideal, complement;
    std::vector<std::vector<std::vector<mpq_class>>> J;
    std::vector<int> w;
};

struct HelperIdealFx {
    mpz_class p;
    std::vector<std::vector<mpq_class>> ideal, complement;
};

struct PerRhoFx {
    std::optional<mpz_class> lambda_tilde, s_tilde, t_tilde;
    std::vector<TargetIdealFx> targets;
};

struct ClassFx {
    std::string name;
    mpz_class b_norm = 1;
    std::vector<std::vector<mpq_class>> L_basis, aL_basis;
    std::vector<HelperIdealFx> helpers;
    std::vector<std::vector<mpq_class>> h; // one vector per rho
    std::vector<mpz_class> expected_level, expected_t; // per rho, may be empty
    std::vector<Check> checks;
};

struct CrossCheck {
    std::string type; // inverse_pair
    int class_a = 0, class_b = 0;
    double tol_log10 = -40;
    std::string note;
};

struct KappaCheck {
    long kappa = 1;
    std::vector<std::vector<long>> subsets; // n-values per subset
    double tol_log10 = -40;
    std::string note;
    std::string re, im;          // optional printed value of the first subproduct
    long match_digits = 7;
};

struct RawQuotient {
    mpq_class w;
    std::vector<std::vector<mpq_class>> taus; // field-element coefficients
    mpz_class den;
    long N = 1;
    int outer = 1;
};

struct Fixture {
    int schema = 1;
    std::string name, note, kind; // standard | raw | setup_only
    std::vector<std::string> tags;
    long precision_digits = 100;
    std::vector<mpz_class> min_poly;
    int r = 0;
    mpz_class q, smoothing_norm;
    std::vector<std::vector<mpq_class>> ok_basis, f_basis;
    std::vector<std::vector<mpq_class>> units;
    std::vector<std::vector<int>> perm_order;
    std::optional<std::vector<int>> mu_override, nu_override;
    long zfone_radius = 5;
    std::vector<std::pair<long, int>> zfone_expected;
    std::optional<long> kappa;
    std::optional<long> smoothing_order_expected;
    std::optional<KappaCheck> kappa_check;
    std::vector<PerRhoFx> per_rho;
    std::vector<ClassFx> classes;
    std::vector<CrossCheck> cross_checks;
    std::vector<RawQuotient> raw_quotients;
    std::vector<Check> raw_checks;
    bool expect_star_failure = false;

    bool has_tag(const std::string& t) const
    {
        for (const auto& x : tags)
            if (x == t) return true;
        return false;
    }
};

Fixture load_fixture(const std::string& path);
Fixture parse_fixture(const std::string& json_text);
std::string serialize_fixture(const Fixture& fx);

} // namespace ellgr

#endif

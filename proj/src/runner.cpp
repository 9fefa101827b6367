#include "ellgr/runner.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

#include "ellgr/relation.hpp"

namespace ellgr {

using nlohmann::json;

void RunReport::add(StageResult s)
{
    if (s.status == "fail") ok = false;
    stages.push_back(std::move(s));
}

std::string RunReport::to_json() const
{
    json j;
    j["fixture"] = fixture_name;
    j["digits"] = digits;
    j["ok"] = ok;
    json st = json::array();
    for (const auto& s : stages) {
        json o;
        o["name"] = s.name;
        o["status"] = s.status;
        if (!s.detail.empty()) o["detail"] = s.detail;
        if (!s.citation.empty()) o["citation"] = s.citation;
        if (s.residual_log10 != 0) o["residual_log10"] = s.residual_log10;
        st.push_back(o);
    }
    j["stages"] = st;
    return j.dump(1);
}

namespace {

FieldElement to_element(const NumberField& K, const std::vector<mpq_class>& v)
{
    if ((int)v.size() != K.degree())
        throw parse_error("fixture: coefficient vector has wrong length");
    return FieldElement{v};
}

ZModuleBasis to_module(const NumberField& K, const std::vector<std::vector<mpq_class>>& rows,
                       ZModuleBasis::Role role)
{
    ZModuleBasis m;
    m.role = role;
    for (const auto& r : rows) m.basis.push_back(to_element(K, r));
    if ((int)m.basis.size() != K.degree())
        throw parse_error("fixture: module basis must have full rank");
    return m;
}

// |v - printed| against the truncation radius of the printed decimal string;
// scientific notation shifts the radius by the exponent
bool prefix_match(const BigFloat& v, const std::string& printed)
{
    if (printed.empty()) return true;
    BigFloat expect = BigFloat::from_string(printed, v.prec());
    long places = 0;
    auto dot = printed.find('.');
    if (dot != std::string::npos) {
        for (size_t i = dot + 1; i < printed.size() && isdigit(printed[i]); i++) places++;
    }
    long expo = 0;
    auto e = printed.find_first_of("eE");
    if (e != std::string::npos) expo = atol(printed.c_str() + e + 1);
    double diff = (v - expect).log10_abs();
    return diff < -(double)places + (double)expo + 0.12;
}

bool prefix_match2(const BigComplex& v, const std::string& re, const std::string& im)
{
    return prefix_match(v.re(), re) && prefix_match(v.im(), im);
}

int perm_sign(const std::vector<int>& p)
{
    int s = 1;
    for (size_t i = 0; i < p.size(); i++)
        for (size_t j = i + 1; j < p.size(); j++)
            if (p[i] > p[j]) s = -s;
    return s;
}

std::string fmt_value(const BigComplex& v, long digits)
{
    return v.str(std::min<long>(digits, 12));
}

struct ClassRun {
    std::vector<GeomSetup> setups; // per rho
};

} // namespace

RunReport run_example(const Fixture& fx, const RunOptions& opt)
{
    RunReport rep;
    rep.fixture_name = fx.name;
    long digits = opt.digits > 0 ? opt.digits : fx.precision_digits;
    rep.digits = digits;
    PrecisionContext ctx(digits, opt.guard);

    NumberField K(fx.min_poly);
    if (fx.kind == "tilde_only") {
        // content / overflow of the unit system over O_K, nothing else
        ZModuleBasis OK = to_module(K, fx.ok_basis, ZModuleBasis::Role::ring_of_integers);
        UnitSystem units;
        for (const auto& u : fx.units) units.fundamental.push_back(to_element(K, u));
        for (size_t ri = 0; ri < fx.perm_order.size(); ri++) {
            try {
                GeomSetup g = geometric_setup(K, OK, OK, units.bracket(K, fx.perm_order[ri]),
                                              K.one(), 1, 1, ctx);
                bool ok = true;
                if (ri < fx.per_rho.size() && fx.per_rho[ri].lambda_tilde)
                    ok = g.lambda_tilde == *fx.per_rho[ri].lambda_tilde &&
                         g.s_tilde == *fx.per_rho[ri].s_tilde &&
                         g.t_tilde == *fx.per_rho[ri].t_tilde;
                rep.add({"tilde rho" + std::to_string(ri), ok ? "pass" : "fail",
                         "lambda~ " + g.lambda_tilde.get_str() + ", s~ " + g.s_tilde.get_str() +
                             ", t~ " + g.t_tilde.get_str(),
                         fx.note, 0});
            } catch (const error& e) {
                rep.add({"tilde rho" + std::to_string(ri), "fail", e.what(), fx.note, 0});
            }
        }
        return rep;
    }
    if (fx.kind == "raw") {
        mpfr_prec_t bits = ctx.bits();
        BigComplex prod = BigComplex::from_long(1, bits);
        for (const auto& rq : fx.raw_quotients) {
            std::vector<BigComplex> taus;
            for (const auto& t : rq.taus) {
                BigComplex num = K.embed_complex(to_element(K, t), bits);
                taus.push_back(num * BigComplex::from_mpq(mpq_class(1, rq.den), bits));
            }
            BigComplex w = BigComplex::from_mpq(rq.w, bits);
            prod *= smoothed_quotient((int)taus.size() - 1, w, taus, rq.N, rq.outer, ctx,
                                      opt.threads);
        }
        rep.add({"raw_product", "pass", fmt_value(prod, digits), fx.note, 0});
        for (const auto& ch : fx.raw_checks) {
            if (ch.type == "value") {
                bool ok = prefix_match2(prod, ch.re, ch.im);
                rep.add({ch.name, ok ? "pass" : "fail", fmt_value(prod, digits), ch.note, 0});
            } else if (ch.type == "algdep") {
                auto res = algdep(prod, ch.degree, ctx);
                bool ok = res && res->coeffs == ch.coeffs;
                if (ok && ch.tol_log10 != 0 && res->log10_residual > ch.tol_log10) ok = false;
                rep.add({ch.name, ok ? "pass" : "fail",
                         res ? "degree " + std::to_string((int)res->coeffs.size() - 1)
                             : "no polynomial found",
                         ch.note, res ? res->log10_residual : 0});
            }
        }
        return rep;
    }

    // ---- standard / setup-only fixtures
    if (K.unit_rank() != fx.r) {
        rep.add({"validate", "fail", "unit rank does not match the degree", "", 0});
        return rep;
    }
    ZModuleBasis OK = to_module(K, fx.ok_basis, ZModuleBasis::Role::ring_of_integers);
    ZModuleBasis f_ideal = to_module(K, fx.f_basis, ZModuleBasis::Role::fractional_ideal);
    UnitSystem units;
    for (const auto& u : fx.units) units.fundamental.push_back(to_element(K, u));
    rep.add({"validate", "pass",
             "degree " + std::to_string(K.degree()) + ", " +
                 std::to_string(fx.classes.size()) + " classes",
             "", 0});

    // every unit is totally positive, = 1 mod f, with norm +1
    {
        bool ok = true;
        std::string why;
        for (const auto& u : units.fundamental) {
            if (K.norm(u) != 1) { ok = false; why = "unit norm is not +1"; }
            if (!module_contains(K, K.sub(u, K.one()), f_ideal)) {
                ok = false;
                why = "unit is not congruent to 1 mod f";
            }
            for (int j = 0; j < fx.r; j++) {
                BigComplex v = K.embed(u, j, ctx.bits());
                if (!(v.re() > BigFloat(ctx.bits()))) { ok = false; why = "unit not totally positive"; }
            }
        }
        rep.add({"units", ok ? "pass" : "fail", why, "", 0});
        if (!ok) return rep;
    }

    // setups per class and rho
    std::vector<ClassRun> runs;
    bool setup_failed = false;
    for (const auto& cl : fx.classes) {
        ClassRun cr;
        ZModuleBasis L = to_module(K, cl.L_basis, ZModuleBasis::Role::fractional_ideal);
        for (size_t ri = 0; ri < fx.perm_order.size(); ri++) {
            const auto& h = cl.h.size() == 1 ? cl.h[0] : cl.h.at(ri);
            try {
                GeomSetup g = geometric_setup(K, L, OK, units.bracket(K, fx.perm_order[ri]),
                                              to_element(K, h), fx.q, fx.smoothing_norm, ctx);
                cr.setups.push_back(std::move(g));
            } catch (const error& e) {
                rep.add({"setup " + cl.name, "fail", e.what(), "", 0});
                setup_failed = true;
            }
        }
        if (setup_failed) break;
        std::ostringstream os;
        os << "l = [";
        for (size_t ri = 0; ri < cr.setups.size(); ri++)
            os << (ri ? " " : "") << cr.setups[ri].level.get_str();
        os << "], t = [";
        for (size_t ri = 0; ri < cr.setups.size(); ri++)
            os << (ri ? " " : "") << cr.setups[ri].t.get_str();
        os << "]";
        bool ok = true;
        for (size_t ri = 0; ri < cr.setups.size(); ri++) {
            if (ri < cl.expected_level.size() && cr.setups[ri].level != cl.expected_level[ri]) ok = false;
            if (ri < cl.expected_t.size() && cr.setups[ri].t != cl.expected_t[ri]) ok = false;
        }
        rep.add({"setup " + cl.name, ok ? "pass" : "fail", os.str(), "", 0});
        runs.push_back(std::move(cr));
    }
    if (setup_failed) return rep;

    // tilde invariants per rho against the fixture expectations
    for (size_t ri = 0; ri < fx.per_rho.size() && !runs.empty(); ri++) {
        const auto& pr = fx.per_rho[ri];
        if (!pr.lambda_tilde) continue;
        const GeomSetup& g = runs[0].setups.at(ri);
        bool ok = g.lambda_tilde == *pr.lambda_tilde && g.s_tilde == *pr.s_tilde &&
                  g.t_tilde == *pr.t_tilde;
        rep.add({"tilde rho" + std::to_string(ri), ok ? "pass" : "fail",
                 "lambda~ " + g.lambda_tilde.get_str() + ", s~ " + g.s_tilde.get_str() +
                     ", t~ " + g.t_tilde.get_str(),
                 fx.note, 0});
    }

    // star conditions
    if (!runs.empty()) {
        bool all_pass = true;
        for (size_t ci = 0; ci < fx.classes.size(); ci++)
            for (size_t ri = 0; ri < runs[ci].setups.size(); ri++) {
                StarReport sr = check_star_conditions(K, runs[ci].setups[ri], fx.q,
                                                      fx.smoothing_norm, fx.classes[ci].b_norm, ctx);
                if (!sr.all()) all_pass = false;
            }
        if (fx.expect_star_failure)
            rep.add({"star", all_pass ? "fail" : "pass",
                     all_pass ? "expected a star-condition violation" : "violation detected as expected",
                     "", 0});
        else
            rep.add({"star", all_pass ? "pass" : "fail", "", "", 0});
    }

    // target ideals per rho (data is class-independent)
    for (size_t ri = 0; ri < fx.per_rho.size() && !runs.empty(); ri++) {
        for (const auto& tg : fx.per_rho[ri].targets) {
            TargetIdealData data;
            data.p = tg.p;
            data.vp_t_tilde = tg.vp_t_tilde;
            data.vp_s_tilde = tg.vp_s_tilde;
            data.ideal = to_module(K, tg.ideal, ZModuleBasis::Role::fractional_ideal);
            data.complement = to_module(K, tg.complement, ZModuleBasis::Role::fractional_ideal);
            for (const auto& jj : tg.J)
                data.J.push_back(to_module(K, jj, ZModuleBasis::Role::fractional_ideal));
            data.w = tg.w;
            bool ok = verify_target_ideal(K, data, units.bracket(K, fx.perm_order[ri]),
                                          runs[0].setups[ri].alphas_tilde, OK);
            rep.add({"target rho" + std::to_string(ri) + " p=" + tg.p.get_str(),
                     ok ? "pass" : "fail", "", "", 0});
        }
    }

    // helper ideals per class
    for (size_t ci = 0; ci < fx.classes.size(); ci++) {
        for (const auto& h : fx.classes[ci].helpers) {
            HelperIdealData data;
            data.p = h.p;
            data.ideal = to_module(K, h.ideal, ZModuleBasis::Role::fractional_ideal);
            data.complement = to_module(K, h.complement, ZModuleBasis::Role::fractional_ideal);
            bool ok = true;
            for (const auto& g : runs[ci].setups)
                if (!verify_helper_ideal(K, data, OK, g)) ok = false;
            rep.add({"helper " + fx.classes[ci].name + " p=" + h.p.get_str(),
                     ok ? "pass" : "fail", "", "", 0});
        }
    }

    // admissibility of every h
    for (size_t ci = 0; ci < fx.classes.size(); ci++) {
        const auto& cl = fx.classes[ci];
        ZModuleBasis L = to_module(K, cl.L_basis, ZModuleBasis::Role::fractional_ideal);
        ZModuleBasis aL = to_module(K, cl.aL_basis, ZModuleBasis::Role::fractional_ideal);
        bool ok = true;
        for (const auto& h : cl.h)
            if (!admissible_check(K, to_element(K, h), fx.q, fx.smoothing_norm, L, aL)) ok = false;
        rep.add({"admissible " + cl.name, ok ? "pass" : "fail", "", "", 0});
    }

    // Z_f^1 and the character
    ZfOneSet zf = build_zf_one(K, f_ideal, fx.q, units, fx.zfone_radius);
    {
        std::ostringstream os;
        for (const auto& el : zf.elements) os << "(" << el.n << "," << el.chi << ") ";
        bool ok = true;
        if (!fx.zfone_expected.empty()) {
            ok = zf.elements.size() == fx.zfone_expected.size();
            for (size_t i = 0; ok && i < zf.elements.size(); i++)
                ok = zf.elements[i].n == fx.zfone_expected[i].first &&
                     zf.elements[i].chi == fx.zfone_expected[i].second;
        }
        rep.add({"zfone", ok ? "pass" : "fail", os.str(), "", 0});
    }

    // orientations
    std::vector<int> mu, nu;
    {
        int sg = unit_system_sign(K, units, ctx);
        for (const auto& p : fx.perm_order) {
            mu.push_back(sg * perm_sign(p));
            nu.push_back(sg * perm_sign(p));
        }
        if (fx.mu_override) mu = *fx.mu_override;
        if (fx.nu_override) nu = *fx.nu_override;
        std::ostringstream os;
        os << "mu = [";
        for (size_t i = 0; i < mu.size(); i++) os << (i ? " " : "") << mu[i];
        os << "]";
        bool ok = !fx.mu_override || (mu == *fx.mu_override);
        rep.add({"orientations", ok ? "pass" : "fail", os.str(), "", 0});
    }

    if (fx.smoothing_order_expected) {
        long m = smoothing_order(fx.r, fx.smoothing_norm);
        rep.add({"smoothing_order", m == *fx.smoothing_order_expected ? "pass" : "fail",
                 "m = " + std::to_string(m), "", 0});
    }

    if (opt.setup_only || fx.kind == "setup_only") return rep;

    // ---- values: one batched series pass per (class, rho), factors reused
    // for every product, subproduct and power below
    std::vector<std::vector<std::vector<BigComplex>>> factors(runs.size());
    size_t base_idx = 0;
    for (size_t e = 0; e < zf.elements.size(); e++)
        if (zf.elements[e].n == 1) base_idx = e;
    for (size_t ci = 0; ci < runs.size(); ci++) {
        factors[ci].resize(runs[ci].setups.size());
        for (size_t ri = 0; ri < runs[ci].setups.size(); ri++) {
            std::vector<std::pair<int, long>> mun;
            for (const auto& el : zf.elements) mun.emplace_back(mu[ri] * el.chi, el.n);
            std::vector<BigComplex> vals =
                arithmetic_gr_batch(K, runs[ci].setups[ri], mun, ctx, opt.threads);
            for (size_t e = 0; e < vals.size(); e++) {
                int outer = zf.elements[e].chi * nu[ri];
                factors[ci][ri].push_back(outer == 1 ? vals[e] : reciprocal(vals[e]));
            }
        }
    }
    auto factor_for = [&](size_t ci, size_t ri, long n) -> const BigComplex& {
        for (size_t e = 0; e < zf.elements.size(); e++)
            if (zf.elements[e].n == n) return factors[ci][ri][e];
        throw error("run_example: n value not present in Z_f^1");
    };

    std::vector<BigComplex> rho_products, full_products;
    for (size_t ci = 0; ci < runs.size(); ci++) {
        BigComplex rp = BigComplex::from_long(1, ctx.bits());
        BigComplex fp = BigComplex::from_long(1, ctx.bits());
        for (size_t ri = 0; ri < runs[ci].setups.size(); ri++) {
            rp *= factors[ci][ri][base_idx];
            for (size_t e = 0; e < zf.elements.size(); e++) fp *= factors[ci][ri][e];
        }
        rho_products.push_back(rp);
        full_products.push_back(fp);
    }

    // first kappa subproduct, usable as an algdep / value target
    std::optional<BigComplex> subset_product;
    if (fx.kappa_check && !runs.empty() && !fx.kappa_check->subsets.empty()) {
        BigComplex p = BigComplex::from_long(1, ctx.bits());
        for (size_t ri = 0; ri < runs[0].setups.size(); ri++)
            for (long n : fx.kappa_check->subsets[0]) p *= factor_for(0, ri, n);
        subset_product = p;
    }

    auto pick_target = [&](const std::string& of, size_t ci) -> BigComplex {
        if (of == "full_product") return full_products[ci];
        if (of == "rho_product") return rho_products[ci];
        if (of == "subset_product" && subset_product) return *subset_product;
        throw parse_error("fixture: unknown check target '" + of + "'");
    };

    for (size_t ci = 0; ci < runs.size(); ci++) {
        const auto& cl = fx.classes[ci];
        for (const auto& ch : cl.checks) {
            std::string label = cl.name + " " + ch.name;
            try {
                if (ch.type == "value") {
                    BigComplex v = arithmetic_gr(K, runs[ci].setups[(size_t)ch.rho_index],
                                                 ch.spec.mu, ch.spec.n, ctx, opt.threads);
                    if (ch.spec.outer == -1) v = reciprocal(v);
                    bool ok = prefix_match2(v, ch.re, ch.im);
                    rep.add({label, ok ? "pass" : "fail", fmt_value(v, digits), ch.note, 0});
                } else if (ch.type == "rho_value") {
                    BigComplex v = factors[ci][(size_t)ch.rho_index][base_idx];
                    bool ok = prefix_match2(v, ch.re, ch.im);
                    rep.add({label, ok ? "pass" : "fail", fmt_value(v, digits), ch.note, 0});
                } else if (ch.type == "rho_product" || ch.type == "full_product") {
                    BigComplex v = pick_target(ch.type, ci);
                    bool ok = prefix_match2(v, ch.re, ch.im);
                    rep.add({label, ok ? "pass" : "fail", fmt_value(v, digits), ch.note, 0});
                } else if (ch.type == "power") {
                    long m = ch.power_m > 1 ? ch.power_m : smoothing_order(fx.r, fx.smoothing_norm);
                    BigComplex v = pow_int(pick_target(ch.of, ci), m);
                    bool ok = prefix_match2(v, ch.re, ch.im);
                    rep.add({label, ok ? "pass" : "fail", fmt_value(v, digits), ch.note, 0});
                } else if (ch.type == "log_abs_sq") {
                    BigFloat lg = ln_abs_sq(full_products[ci]);
                    lg = lg / BigFloat::from_long((long)zf.elements.size(), ctx.bits());
                    bool ok = prefix_match(lg, ch.value);
                    rep.add({label, ok ? "pass" : "fail", lg.str(12), ch.note, 0});
                } else if (ch.type == "algdep") {
                    BigComplex v = pick_target(ch.of, ci);
                    if (ch.power_m > 1) v = pow_int(v, ch.power_m);
                    auto res = algdep(v, ch.degree, ctx);
                    bool ok = res.has_value();
                    if (ok && !ch.coeffs.empty()) ok = res->coeffs == ch.coeffs;
                    if (ok && ch.tol_log10 != 0 && res->log10_residual > ch.tol_log10) ok = false;
                    rep.add({label, ok ? "pass" : "fail",
                             res ? "residual 1e" + std::to_string((int)res->log10_residual)
                                 : "no polynomial found",
                             ch.note, res ? res->log10_residual : 0});
                } else if (ch.type == "unity") {
                    BigComplex v = pick_target(ch.of, ci);
                    double r10 = (v - BigComplex::from_long(1, ctx.bits())).log10_abs();
                    double tol = ch.tol_log10 != 0 ? ch.tol_log10 : -40.0;
                    rep.add({label, r10 < tol ? "pass" : "fail", fmt_value(v, digits), ch.note, r10});
                } else if (ch.type == "invariance") {
                    auto value_of = [&](const ValueSpec& s) {
                        BigComplex v = arithmetic_gr(K, runs[ci].setups[(size_t)ch.rho_index],
                                                     s.mu, s.n, ctx, opt.threads);
                        return s.outer == -1 ? reciprocal(v) : v;
                    };
                    BigComplex lhs = value_of(ch.spec), rhs = value_of(ch.rhs_spec);
                    double r10 = (lhs - rhs).log10_abs() - std::max(0.0, rhs.log10_abs());
                    double tol = ch.tol_log10 != 0 ? ch.tol_log10 : -(double)(digits - 10);
                    rep.add({label, r10 < tol ? "pass" : "fail", "", ch.note, r10});
                } else {
                    rep.add({label, "fail", "unknown check type " + ch.type, "", 0});
                }
            } catch (const error& e) {
                rep.add({label, "fail", e.what(), ch.note, 0});
            }
        }
    }

    for (const auto& cc : fx.cross_checks) {
        if (cc.type == "inverse_pair") {
            BigComplex prod = rho_products[(size_t)cc.class_a] * rho_products[(size_t)cc.class_b];
            double r10 = (prod - BigComplex::from_long(1, ctx.bits())).log10_abs();
            rep.add({"inverse_pair " + std::to_string(cc.class_a) + "," + std::to_string(cc.class_b),
                     r10 < cc.tol_log10 ? "pass" : "fail", "", cc.note, r10});
        }
    }

    if (fx.kappa_check && !runs.empty()) {
        const auto& kc = *fx.kappa_check;
        long m = smoothing_order(fx.r, fx.smoothing_norm);
        std::vector<BigComplex> subs;
        for (const auto& set : kc.subsets) {
            BigComplex p = BigComplex::from_long(1, ctx.bits());
            for (size_t ri = 0; ri < runs[0].setups.size(); ri++)
                for (long n : set) p *= factor_for(0, ri, n);
            subs.push_back(p);
        }
        bool ok = (long)kc.subsets.size() == kc.kappa;
        if (!kc.re.empty() && !prefix_match2(subs[0], kc.re, kc.im)) ok = false;
        double worst = -1e300;
        for (size_t i = 1; i < subs.size(); i++) {
            double r10 = (pow_int(subs[i], m) - pow_int(subs[0], m)).log10_abs() -
                         std::max(0.0, pow_int(subs[0], m).log10_abs());
            worst = std::max(worst, r10);
            if (r10 >= kc.tol_log10) ok = false;
        }
        // the full product is the kappa-th power of the first subproduct
        BigComplex recon = pow_int(subs[0], kc.kappa);
        double r10 = (recon - full_products[0]).log10_abs() - std::max(0.0, recon.log10_abs());
        if (r10 >= kc.tol_log10) ok = false;
        rep.add({"kappa", ok ? "pass" : "fail",
                 "kappa = " + std::to_string(kc.kappa), kc.note, worst});
    }

    return rep;
}

} // namespace ellgr

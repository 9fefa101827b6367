#include "ellgr/fixture.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ellgr {

using nlohmann::json;

namespace {

mpq_class parse_rat(const json& j)
{
    if (j.is_number_integer()) return mpq_class((long)j.get<long long>());
    mpq_class q(j.get<std::string>());
    q.canonicalize();
    return q;
}

mpz_class parse_int(const json& j)
{
    if (j.is_number_integer()) return mpz_class((long)j.get<long long>());
    return mpz_class(j.get<std::string>());
}

std::vector<mpq_class> parse_vec(const json& j)
{
    std::vector<mpq_class> v;
    for (const auto& x : j) v.push_back(parse_rat(x));
    return v;
}

std::vector<std::vector<mpq_class>> parse_mat(const json& j)
{
    std::vector<std::vector<mpq_class>> m;
    for (const auto& row : j) m.push_back(parse_vec(row));
    return m;
}

ValueSpec parse_spec(const json& j)
{
    ValueSpec s;
    s.mu = j.at("mu").get<int>();
    s.n = j.at("n").get<long>();
    s.outer = j.value("outer", 1);
    return s;
}

Check parse_check(const json& j)
{
    Check c;
    c.type = j.at("type").get<std::string>();
    c.name = j.value("name", c.type);
    c.note = j.value("note", "");
    if (j.contains("spec")) c.spec = parse_spec(j.at("spec"));
    if (j.contains("rhs")) c.rhs_spec = parse_spec(j.at("rhs"));
    c.rho_index = j.value("rho_index", 0);
    c.of = j.value("of", "rho_product");
    c.power_m = j.value("power_m", 1L);
    c.re = j.value("re", "");
    c.im = j.value("im", "");
    c.value = j.value("value", "");
    c.match_digits = j.value("match_digits", 7L);
    c.degree = j.value("degree", 0);
    if (j.contains("coeffs"))
        for (const auto& x : j.at("coeffs")) c.coeffs.push_back(parse_int(x));
    c.tol_log10 = j.value("tol_log10", 0.0);
    return c;
}

json rat_str(const mpq_class& q)
{
    return json(q.get_str());
}

json mat_json(const std::vector<std::vector<mpq_class>>& m)
{
    json rows = json::array();
    for (const auto& r : m) {
        json row = json::array();
        for (const auto& x : r) row.push_back(rat_str(x));
        rows.push_back(row);
    }
    return rows;
}

} // namespace

Fixture parse_fixture(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw parse_error(std::string("fixture: invalid JSON: ") + e.what());
    }
    Fixture fx;
    fx.schema = j.value("schema", 1);
    if (fx.schema != 1) throw parse_error("fixture: unsupported schema version");
    fx.name = j.value("name", "unnamed");
    fx.note = j.value("note", "");
    fx.kind = j.value("kind", "standard");
    if (j.contains("tags"))
        for (const auto& t : j.at("tags")) fx.tags.push_back(t.get<std::string>());
    fx.precision_digits = j.value("precision_digits", 100L);
    for (const auto& c : j.at("min_poly")) fx.min_poly.push_back(parse_int(c));
    fx.r = j.value("r", (int)0);

    if (fx.kind == "tilde_only") {
        fx.ok_basis = parse_mat(j.at("ok_basis"));
        if (j.contains("units")) fx.units = parse_mat(j.at("units"));
        if (j.contains("perm_order"))
            for (const auto& p : j.at("perm_order"))
                fx.perm_order.push_back(p.get<std::vector<int>>());
        else if (fx.r == 1)
            fx.perm_order.push_back({1});
        for (const auto& pr : j.value("per_rho", json::array())) {
            PerRhoFx p;
            if (pr.contains("expected_tilde")) {
                const auto& e = pr.at("expected_tilde");
                p.lambda_tilde = parse_int(e.at("lambda"));
                p.s_tilde = parse_int(e.at("s"));
                p.t_tilde = parse_int(e.at("t"));
            }
            fx.per_rho.push_back(std::move(p));
        }
        return fx;
    }
    if (fx.kind != "raw") {
        fx.q = parse_int(j.at("q"));
        fx.smoothing_norm = parse_int(j.at("smoothing_norm"));
        fx.ok_basis = parse_mat(j.at("ok_basis"));
        fx.f_basis = parse_mat(j.at("f_basis"));
        if (j.contains("units")) fx.units = parse_mat(j.at("units"));
        if (j.contains("perm_order")) {
            for (const auto& p : j.at("perm_order"))
                fx.perm_order.push_back(p.get<std::vector<int>>());
        } else if (fx.r == 1) {
            fx.perm_order.push_back({1});
        } else if (fx.r == 0) {
            fx.perm_order.push_back({});
        }
        if (j.contains("orientations")) {
            fx.mu_override = j.at("orientations").at("mu").get<std::vector<int>>();
            fx.nu_override = j.at("orientations").at("nu").get<std::vector<int>>();
        }
        if (j.contains("zfone")) {
            fx.zfone_radius = j.at("zfone").value("radius", 5L);
            for (const auto& e : j.at("zfone").at("expected"))
                fx.zfone_expected.emplace_back(e.at(0).get<long>(), e.at(1).get<int>());
        }
        if (j.contains("kappa")) fx.kappa = j.at("kappa").get<long>();
        if (j.contains("smoothing_order"))
            fx.smoothing_order_expected = j.at("smoothing_order").get<long>();
        if (j.contains("kappa_check")) {
            KappaCheck kc;
            const auto& k = j.at("kappa_check");
            kc.kappa = k.at("kappa").get<long>();
            for (const auto& s : k.at("subsets")) kc.subsets.push_back(s.get<std::vector<long>>());
            kc.tol_log10 = k.value("tol_log10", -40.0);
            kc.note = k.value("note", "");
            kc.re = k.value("re", "");
            kc.im = k.value("im", "");
            kc.match_digits = k.value("match_digits", 7L);
            fx.kappa_check = kc;
        }
        for (const auto& pr : j.value("per_rho", json::array())) {
            PerRhoFx p;
            if (pr.contains("expected_tilde")) {
                const auto& e = pr.at("expected_tilde");
                p.lambda_tilde = parse_int(e.at("lambda"));
                p.s_tilde = parse_int(e.at("s"));
                p.t_tilde = parse_int(e.at("t"));
            }
            for (const auto& tg : pr.value("targets", json::array())) {
                TargetIdealFx t;
                t.p = parse_int(tg.at("p"));
                t.vp_t_tilde = tg.value("vp_t_tilde", 1);
                t.vp_s_tilde = tg.value("vp_s_tilde", 1);
                t.ideal = parse_mat(tg.at("ideal"));
                t.complement = parse_mat(tg.at("complement"));
                for (const auto& jj : tg.value("J", json::array())) {
                    t.J.push_back(parse_mat(jj.at("basis")));
                    t.w.push_back(jj.at("w").get<int>());
                }
                p.targets.push_back(std::move(t));
            }
            fx.per_rho.push_back(std::move(p));
        }
        for (const auto& cl : j.value("classes", json::array())) {
            ClassFx c;
            c.name = cl.value("name", "class");
            c.b_norm = cl.contains("b_norm") ? parse_int(cl.at("b_norm")) : mpz_class(1);
            c.L_basis = parse_mat(cl.at("L_basis"));
            c.aL_basis = parse_mat(cl.at("aL_basis"));
            for (const auto& h : cl.value("helpers", json::array())) {
                HelperIdealFx hf;
                hf.p = parse_int(h.at("p"));
                hf.ideal = parse_mat(h.at("ideal"));
                hf.complement = parse_mat(h.at("complement"));
                c.helpers.push_back(std::move(hf));
            }
            c.h = parse_mat(cl.at("h"));
            if (cl.contains("expected_level"))
                for (const auto& x : cl.at("expected_level")) c.expected_level.push_back(parse_int(x));
            if (cl.contains("expected_t"))
                for (const auto& x : cl.at("expected_t")) c.expected_t.push_back(parse_int(x));
            for (const auto& ch : cl.value("checks", json::array()))
                c.checks.push_back(parse_check(ch));
            fx.classes.push_back(std::move(c));
        }
        for (const auto& cc : j.value("cross_checks", json::array())) {
            CrossCheck c;
            c.type = cc.at("type").get<std::string>();
            c.class_a = cc.value("class_a", 0);
            c.class_b = cc.value("class_b", 0);
            c.tol_log10 = cc.value("tol_log10", -40.0);
            c.note = cc.value("note", "");
            fx.cross_checks.push_back(std::move(c));
        }
        fx.expect_star_failure = j.value("expect_star_failure", false);
    } else {
        for (const auto& rq : j.at("raw_quotients")) {
            RawQuotient r;
            r.w = parse_rat(rq.at("w"));
            r.taus = parse_mat(rq.at("taus"));
            r.den = parse_int(rq.at("den"));
            r.N = rq.at("N").get<long>();
            r.outer = rq.value("outer", 1);
            fx.raw_quotients.push_back(std::move(r));
        }
        for (const auto& ch : j.value("checks", json::array()))
            fx.raw_checks.push_back(parse_check(ch));
    }
    return fx;
}

Fixture load_fixture(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw parse_error("fixture: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_fixture(ss.str());
}

std::string serialize_fixture(const Fixture& fx)
{
    // round-trip support for the schema test; emits the same structure the
    // parser accepts (checks and expected values included verbatim)
    json j;
    j["schema"] = fx.schema;
    j["name"] = fx.name;
    if (!fx.note.empty()) j["note"] = fx.note;
    j["kind"] = fx.kind;
    if (!fx.tags.empty()) j["tags"] = fx.tags;
    j["precision_digits"] = fx.precision_digits;
    json mp = json::array();
    for (const auto& c : fx.min_poly) mp.push_back(c.get_str());
    j["min_poly"] = mp;
    j["r"] = fx.r;
    if (fx.kind == "tilde_only") {
        j["ok_basis"] = mat_json(fx.ok_basis);
        if (!fx.units.empty()) j["units"] = mat_json(fx.units);
        if (!fx.perm_order.empty()) j["perm_order"] = fx.perm_order;
        json prs = json::array();
        for (const auto& p : fx.per_rho) {
            json pr;
            if (p.lambda_tilde)
                pr["expected_tilde"] = {{"lambda", p.lambda_tilde->get_str()},
                                        {"s", p.s_tilde->get_str()},
                                        {"t", p.t_tilde->get_str()}};
            prs.push_back(pr);
        }
        j["per_rho"] = prs;
        return j.dump(1);
    }
    if (fx.kind != "raw") {
        j["q"] = fx.q.get_str();
        j["smoothing_norm"] = fx.smoothing_norm.get_str();
        j["ok_basis"] = mat_json(fx.ok_basis);
        j["f_basis"] = mat_json(fx.f_basis);
        if (!fx.units.empty()) j["units"] = mat_json(fx.units);
        if (!fx.perm_order.empty()) j["perm_order"] = fx.perm_order;
        if (fx.mu_override)
            j["orientations"] = {{"mu", *fx.mu_override}, {"nu", *fx.nu_override}};
        if (!fx.zfone_expected.empty()) {
            json e = json::array();
            for (const auto& [n, chi] : fx.zfone_expected) e.push_back({n, chi});
            j["zfone"] = {{"radius", fx.zfone_radius}, {"expected", e}};
        }
        if (fx.kappa) j["kappa"] = *fx.kappa;
        if (fx.smoothing_order_expected) j["smoothing_order"] = *fx.smoothing_order_expected;
        json prs = json::array();
        for (const auto& p : fx.per_rho) {
            json pr;
            if (p.lambda_tilde)
                pr["expected_tilde"] = {{"lambda", p.lambda_tilde->get_str()},
                                        {"s", p.s_tilde->get_str()},
                                        {"t", p.t_tilde->get_str()}};
            json tgs = json::array();
            for (const auto& t : p.targets) {
                json tg;
                tg["p"] = t.p.get_str();
                tg["vp_t_tilde"] = t.vp_t_tilde;
                tg["vp_s_tilde"] = t.vp_s_tilde;
                tg["ideal"] = mat_json(t.ideal);
                tg["complement"] = mat_json(t.complement);
                json js = json::array();
                for (size_t k = 0; k < t.J.size(); k++)
                    js.push_back({{"basis", mat_json(t.J[k])}, {"w", t.w[k]}});
                if (!js.empty()) tg["J"] = js;
                tgs.push_back(tg);
            }
            if (!tgs.empty()) pr["targets"] = tgs;
            prs.push_back(pr);
        }
        j["per_rho"] = prs;
        json cls = json::array();
        for (const auto& c : fx.classes) {
            json cl;
            cl["name"] = c.name;
            cl["b_norm"] = c.b_norm.get_str();
            cl["L_basis"] = mat_json(c.L_basis);
            cl["aL_basis"] = mat_json(c.aL_basis);
            json hs = json::array();
            for (const auto& h : c.helpers)
                hs.push_back({{"p", h.p.get_str()},
                              {"ideal", mat_json(h.ideal)},
                              {"complement", mat_json(h.complement)}});
            if (!hs.empty()) cl["helpers"] = hs;
            cl["h"] = mat_json(c.h);
            json lv = json::array(), tv = json::array();
            for (const auto& x : c.expected_level) lv.push_back(x.get_str());
            for (const auto& x : c.expected_t) tv.push_back(x.get_str());
            if (!lv.empty()) cl["expected_level"] = lv;
            if (!tv.empty()) cl["expected_t"] = tv;
            json chk = json::array();
            for (const auto& ch : c.checks) {
                json o;
                o["type"] = ch.type;
                o["name"] = ch.name;
                if (!ch.note.empty()) o["note"] = ch.note;
                o["spec"] = {{"mu", ch.spec.mu}, {"n", ch.spec.n}, {"outer", ch.spec.outer}};
                o["rhs"] = {{"mu", ch.rhs_spec.mu}, {"n", ch.rhs_spec.n}, {"outer", ch.rhs_spec.outer}};
                o["rho_index"] = ch.rho_index;
                o["of"] = ch.of;
                o["power_m"] = ch.power_m;
                if (!ch.re.empty()) o["re"] = ch.re;
                if (!ch.im.empty()) o["im"] = ch.im;
                if (!ch.value.empty()) o["value"] = ch.value;
                o["match_digits"] = ch.match_digits;
                if (ch.degree) o["degree"] = ch.degree;
                if (!ch.coeffs.empty()) {
                    json cf = json::array();
                    for (const auto& x : ch.coeffs) cf.push_back(x.get_str());
                    o["coeffs"] = cf;
                }
                if (ch.tol_log10 != 0) o["tol_log10"] = ch.tol_log10;
                chk.push_back(o);
            }
            if (!chk.empty()) cl["checks"] = chk;
            cls.push_back(cl);
        }
        j["classes"] = cls;
        if (!fx.cross_checks.empty()) {
            json xs = json::array();
            for (const auto& cc : fx.cross_checks) {
                json o;
                o["type"] = cc.type;
                o["class_a"] = cc.class_a;
                o["class_b"] = cc.class_b;
                o["tol_log10"] = cc.tol_log10;
                if (!cc.note.empty()) o["note"] = cc.note;
                xs.push_back(o);
            }
            j["cross_checks"] = xs;
        }
        if (fx.kappa_check) {
            json o;
            o["kappa"] = fx.kappa_check->kappa;
            o["subsets"] = fx.kappa_check->subsets;
            o["tol_log10"] = fx.kappa_check->tol_log10;
            if (!fx.kappa_check->note.empty()) o["note"] = fx.kappa_check->note;
            if (!fx.kappa_check->re.empty()) o["re"] = fx.kappa_check->re;
            if (!fx.kappa_check->im.empty()) o["im"] = fx.kappa_check->im;
            o["match_digits"] = fx.kappa_check->match_digits;
            j["kappa_check"] = o;
        }
        if (fx.expect_star_failure) j["expect_star_failure"] = true;
    } else {
        json rq = json::array();
        for (const auto& r : fx.raw_quotients) {
            json o;
            o["w"] = r.w.get_str();
            o["taus"] = mat_json(r.taus);
            o["den"] = r.den.get_str();
            o["N"] = r.N;
            o["outer"] = r.outer;
            rq.push_back(o);
        }
        j["raw_quotients"] = rq;
        json chk = json::array();
        for (const auto& ch : fx.raw_checks) {
            json o;
            o["type"] = ch.type;
            o["name"] = ch.name;
            if (!ch.note.empty()) o["note"] = ch.note;
            if (!ch.re.empty()) o["re"] = ch.re;
            if (!ch.im.empty()) o["im"] = ch.im;
            if (!ch.value.empty()) o["value"] = ch.value;
            o["match_digits"] = ch.match_digits;
            if (ch.degree) o["degree"] = ch.degree;
            if (!ch.coeffs.empty()) {
                json cf = json::array();
                for (const auto& x : ch.coeffs) cf.push_back(x.get_str());
                o["coeffs"] = cf;
            }
            if (ch.tol_log10 != 0) o["tol_log10"] = ch.tol_log10;
            o["of"] = ch.of;
            chk.push_back(o);
        }
        if (!chk.empty()) j["checks"] = chk;
    }
    return j.dump(1);
}

} // namespace ellgr

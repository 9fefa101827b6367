#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "ellgr/ellgamma.hpp"
#include "ellgr/fixture.hpp"
#include "ellgr/relation.hpp"
#include "ellgr/runner.hpp"
#include "ellgr/zlattice.hpp"

using namespace ellgr;

namespace {

// complex literals: "a", "a+bi", "a-bi", "bi", "i", with decimal or p/q parts
BigComplex parse_complex(const std::string& text, mpfr_prec_t prec)
{
    std::string s;
    for (char c : text)
        if (!isspace((unsigned char)c)) s += c;
    if (s.empty()) throw parse_error("empty complex literal");

    auto parse_real = [&](const std::string& t) -> BigFloat {
        if (t.empty() || t == "+") return BigFloat::from_long(1, prec);
        if (t == "-") return BigFloat::from_long(-1, prec);
        if (t.find('/') != std::string::npos) {
            mpq_class q(t);
            q.canonicalize();
            return BigFloat::from_mpq(q, prec);
        }
        return BigFloat::from_string(t, prec);
    };

    bool has_i = !s.empty() && s.back() == 'i';
    if (!has_i) return BigComplex(parse_real(s), BigFloat(prec));
    s.pop_back();
    size_t split = std::string::npos;
    for (size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos)
        return BigComplex(BigFloat(prec), parse_real(s));
    return BigComplex(parse_real(s.substr(0, split)), parse_real(s.substr(split)));
}

std::vector<BigComplex> parse_complex_list(const std::string& text, mpfr_prec_t prec)
{
    std::vector<BigComplex> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_complex(item, prec));
    return out;
}

long env_default(const char* name, long fallback)
{
    const char* v = std::getenv(name);
    return v ? atol(v) : fallback;
}

BigComplex rnd_c(std::mt19937& rng, mpfr_prec_t p, double re_lo, double re_hi, double im_lo,
                 double im_hi)
{
    std::uniform_real_distribution<double> re(re_lo, re_hi), im(im_lo, im_hi);
    return {BigFloat::from_double(re(rng), p), BigFloat::from_double(im(rng), p)};
}

int identity_suite(int r, int trials, long digits, long guard, unsigned long seed)
{
    PrecisionContext ctx(digits, guard);
    mpfr_prec_t p = ctx.bits();
    std::mt19937 rng((unsigned)seed);
    double tol = -(double)(digits - 10);
    bool ok = true;

    auto report = [&](const char* family, double worst) {
        std::cout << family << ": max residual 1e" << (int)worst
                  << (worst < tol ? "  [ok]" : "  [FAIL]") << "\n";
        if (worst >= tol) ok = false;
    };

    {
        double worst = -1e300;
        for (int t = 0; t < trials; t++) {
            std::vector<BigComplex> omegas{BigComplex::from_long(1, p)};
            for (int j = 1; j < r + 2; j++) omegas.push_back(rnd_c(rng, p, -1.2, 1.2, 0.4, 1.3));
            BigComplex z = rnd_c(rng, p, -0.2, 0.8, 0.05, 0.5);
            worst = std::max(worst,
                             modular_identity_residual(r, z, omegas, ctx).log10_abs());
        }
        report("modular identity", worst);
    }
    {
        double worst = -1e300;
        for (int t = 0; t < trials; t++) {
            std::vector<BigComplex> taus;
            for (int j = 0; j <= r; j++) taus.push_back(rnd_c(rng, p, -0.8, 0.8, 0.4, 1.2));
            BigComplex z = rnd_c(rng, p, -0.8, 0.8, 0.1, 0.5);
            worst = std::max(worst, conjugation_residual(r, z, taus, ctx).log10_abs());
        }
        report("conjugation", worst);
    }
    if (r >= 1) {
        // shift relation G_r(z + tau_j) = G_{r-1}(z, minus j) G_r(z)
        double worst = -1e300;
        for (int t = 0; t < trials; t++) {
            std::vector<BigComplex> taus;
            for (int j = 0; j <= r; j++) taus.push_back(rnd_c(rng, p, -0.8, 0.8, 0.4, 1.2));
            BigComplex z = rnd_c(rng, p, -0.8, 0.8, 0.1, 0.4);
            std::vector<BigComplex> minus(taus.begin() + 1, taus.end());
            BigComplex lhs = gr(r, z + taus[0], taus, ctx);
            BigComplex rhs = gr(r - 1, z, minus, ctx) * gr(r, z, taus, ctx);
            worst = std::max(worst, (lhs - rhs).log10_abs() - std::max(0.0, rhs.log10_abs()));
        }
        report("shift relation", worst);
    }
    if (r >= 1 && r <= 2) {
        // geometric modular identity + SL equivariance on random small families
        double worst_mod = -1e300, worst_eq = -1e300;
        int n = r + 2;
        std::uniform_int_distribution<int> entry(-2, 2), pick(0, n - 1), coef(-2, 2);
        int done = 0;
        while (done < trials) {
            IntMat a(n, n);
            bool bad = false;
            for (int i = 0; i < n; i++) {
                std::vector<mpz_class> row((size_t)n);
                int guard_ct = 0;
                do {
                    for (int j = 0; j < n; j++) row[(size_t)j] = entry(rng);
                    if (++guard_ct > 50) { bad = true; break; }
                } while (content(row) != 1);
                if (bad) break;
                for (int j = 0; j < n; j++) a.at(i, j) = row[(size_t)j];
            }
            if (bad || det(a) == 0) continue;
            std::vector<BigComplex> x;
            for (int i = 0; i < n; i++) x.push_back(rnd_c(rng, p, -1, 1, 0.5, 1.2));
            BigComplex w = rnd_c(rng, p, 0.1, 0.5, 0.05, 0.3);
            try {
                std::vector<GeomFamily> fams;
                bool degenerate = false;
                for (int j = 0; j < n && !degenerate; j++) {
                    IntMat sub(n - 1, n);
                    int rr = 0;
                    for (int i = 0; i < n; i++) {
                        if (i == j) continue;
                        for (int c = 0; c < n; c++) sub.at(rr, c) = a.at(i, c);
                        rr++;
                    }
                    GeomFamily fam = primitive_dual_family(sub);
                    std::complex<double> gx = 0;
                    for (int i = 0; i < n; i++)
                        gx += (double)fam.gamma[(size_t)i].get_si() * x[(size_t)i].to_complex_double();
                    if (std::abs(gx) < 0.05) { degenerate = true; break; }
                    for (int k = 0; k < n - 1; k++) {
                        std::complex<double> ax = 0;
                        for (int i = 0; i < n; i++)
                            ax += (double)fam.alphas.at(k, i).get_si() *
                                  x[(size_t)i].to_complex_double();
                        if (std::abs((ax / gx).imag()) < 0.07) { degenerate = true; break; }
                    }
                    if (!degenerate) fams.push_back(std::move(fam));
                }
                if (degenerate) continue;
                BigComplex lhs = BigComplex::from_long(1, p);
                for (int j = 0; j < n; j++) {
                    BigComplex v = geometric_gr(fams[(size_t)j], w, x, ctx);
                    lhs = (j % 2 == 0) ? lhs * v : lhs / v;
                }
                auto [star, resc] = geometric_bernoulli(a, w, x, ctx);
                (void)star;
                BigFloat pi = BigFloat::pi(p);
                BigComplex rhs = exp(BigComplex(-(resc.im() * pi), resc.re() * pi));
                worst_mod = std::max(worst_mod,
                                     (lhs - rhs).log10_abs() - std::max(0.0, rhs.log10_abs()));

                IntMat g = IntMat::identity(n);
                for (int s = 0; s < 5; s++) {
                    int i = pick(rng), j = pick(rng);
                    if (i != j) g.addmul_row(i, j, mpz_class(coef(rng)));
                }
                IntMat ga = fams[0].a_forms * g.transpose();
                GeomFamily gfam = primitive_dual_family(ga);
                std::vector<BigComplex> xt((size_t)n, BigComplex(p));
                for (int i = 0; i < n; i++)
                    for (int j = 0; j < n; j++)
                        xt[(size_t)i] += x[(size_t)j] *
                                         BigComplex::from_mpq(mpq_class(g.at(i, j)), p);
                BigComplex l2 = geometric_gr(gfam, w, xt, ctx);
                BigComplex r2 = geometric_gr(fams[0], w, x, ctx);
                worst_eq = std::max(worst_eq,
                                    (l2 - r2).log10_abs() - std::max(0.0, r2.log10_abs()));
                done++;
            } catch (const domain_error&) {
                continue;
            }
        }
        report("geometric modular", worst_mod);
        report("sl equivariance", worst_eq);
    }
    {
        double worst = -1e300;
        for (int t = 0; t < trials; t++) {
            unsigned d = 1 + (unsigned)(rng() % 4);
            unsigned nn = rng() % 6;
            BigComplex z = rnd_c(rng, p, -2, 2, -2, 2);
            std::vector<BigComplex> wv;
            BigComplex wsum(p);
            for (unsigned j = 0; j < d; j++) {
                BigComplex c = rnd_c(rng, p, -2, 2, 0.3, 2);
                wsum += c;
                wv.push_back(c);
            }
            BigComplex refl = multi_bernoulli(d, nn, z + wsum, wv);
            BigComplex rhs = multi_bernoulli(d, nn, -z, wv);
            if (nn & 1) rhs = -rhs;
            worst = std::max(worst, (refl - rhs).log10_abs() - std::max(0.0, rhs.log10_abs()));
        }
        report("bernoulli reflection", worst);
    }

    std::cout << (ok ? "identity-suite: all families within tolerance\n"
                     : "identity-suite: residual out of tolerance\n");
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"multiple elliptic gamma evaluator"};
    app.require_subcommand(1);
    app.fallthrough();

    long digits = env_default("ELLGR_DIGITS", 100);
    long guard = env_default("ELLGR_GUARD", 20);
    int threads = (int)env_default("ELLGR_THREADS", 1);
    unsigned long seed = (unsigned long)env_default("ELLGR_SEED", 1);
    app.add_option("--digits", digits, "decimal digits of output precision");
    app.add_option("--guard", guard, "extra guard digits");
    app.add_option("--threads", threads, "worker threads for series blocks");
    app.add_option("--seed", seed, "seed for randomized suites");

    auto* evalg = app.add_subcommand("eval-gr", "evaluate G_r(z, taus)");
    int ev_r = 0;
    std::string ev_z, ev_taus;
    evalg->add_option("--r", ev_r, "degree r")->required();
    evalg->add_option("--z", ev_z, "complex literal a+bi")->required();
    evalg->add_option("--taus", ev_taus, "comma-separated r+1 complex literals")->required();

    auto* runex = app.add_subcommand("run-example", "run a fixture end to end");
    std::string fx_path, report_path;
    bool setup_only = false;
    runex->add_option("--fixture", fx_path, "fixture JSON path")->required();
    runex->add_option("--report", report_path, "write the JSON report here");
    runex->add_flag("--setup-only", setup_only, "stop after the setup stages");

    auto* ids = app.add_subcommand("identity-suite", "randomized identity residuals");
    int suite_r = 1, trials = 10;
    ids->add_option("--r", suite_r, "degree r")->required();
    ids->add_option("--trials", trials, "instances per family");

    auto* alg = app.add_subcommand("algdep", "minimal polynomial detection");
    std::string alg_value;
    int alg_degree = 4;
    alg->add_option("--value", alg_value, "complex value \"RE,IM\"")->required();
    alg->add_option("--degree", alg_degree, "degree bound")->required();

    auto* lin = app.add_subcommand("lindep", "integer relation detection");
    std::string lin_file;
    long lin_bound = 0;
    lin->add_option("--values", lin_file, "file with one complex literal per line")->required();
    lin->add_option("--max-coeff-digits", lin_bound, "coefficient digit bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        PrecisionContext ctx(digits, guard);
        mpfr_prec_t prec = ctx.bits();

        if (evalg->parsed()) {
            BigComplex z = parse_complex(ev_z, prec);
            std::vector<BigComplex> taus = parse_complex_list(ev_taus, prec);
            if ((int)taus.size() != ev_r + 1) {
                std::cerr << "eval-gr: need exactly r+1 periods\n";
                return 2;
            }
            BigComplex v = gr(ev_r, z, taus, ctx, threads);
            std::cout << "G_" << ev_r << " = " << v.str(digits) << "\n";
            try {
                BigComplex vper = gr(ev_r, z + BigComplex::from_long(1, prec), taus, ctx, threads);
                double p1 = (v - vper).log10_abs() - std::max(0.0, v.log10_abs());
                std::cout << "periodicity residual:  1e" << (int)p1 << "\n";
            } catch (const pole_error&) {
                std::cout << "periodicity residual:  n/a (pole)\n";
            }
            try {
                std::vector<BigComplex> neg;
                for (const auto& t : taus) neg.push_back(-t);
                BigComplex vinv = gr(ev_r, -z, neg, ctx, threads);
                double p2 = (v * vinv - BigComplex::from_long(1, prec)).log10_abs();
                std::cout << "inversion residual:    1e" << (int)p2 << "\n";
            } catch (const pole_error&) {
                std::cout << "inversion residual:    n/a (value at a zero)\n";
            }
            return 0;
        }
        if (runex->parsed()) {
            Fixture fx = load_fixture(fx_path);
            RunOptions opt;
            opt.digits = digits == 100 ? 0 : digits; // 0 keeps the fixture default
            opt.guard = guard;
            opt.threads = threads;
            opt.setup_only = setup_only;
            opt.seed = seed;
            RunReport rep = run_example(fx, opt);
            for (const auto& st : rep.stages) {
                std::cout << (st.status == "pass" ? "[ ok ] "
                              : st.status == "skip" ? "[skip] " : "[FAIL] ")
                          << st.name;
                if (!st.detail.empty()) std::cout << "  " << st.detail;
                if (!st.citation.empty()) std::cout << "  (" << st.citation << ")";
                std::cout << "\n";
            }
            if (!report_path.empty()) {
                std::ofstream out(report_path);
                out << rep.to_json() << "\n";
            }
            return rep.ok ? 0 : 1;
        }
        if (ids->parsed()) {
            if (suite_r > 3) {
                std::cerr << "identity-suite: r must be at most 3\n";
                return 2;
            }
            return identity_suite(suite_r, trials, digits, guard, seed);
        }
        if (alg->parsed()) {
            auto comma = alg_value.find(',');
            BigComplex v = comma == std::string::npos
                               ? parse_complex(alg_value, prec)
                               : BigComplex(BigFloat::from_string(alg_value.substr(0, comma), prec),
                                            BigFloat::from_string(alg_value.substr(comma + 1), prec));
            auto res = algdep(v, alg_degree, ctx);
            if (!res) {
                std::cout << "none (no polynomial below the acceptance gap; "
                             "raise --digits for a deeper search)\n";
                return 0;
            }
            std::cout << "polynomial (ascending): ";
            for (const auto& c : res->coeffs) std::cout << c.get_str() << " ";
            std::cout << "\nresidual: 1e" << (int)res->log10_residual
                      << (res->palindromic ? ", palindromic" : "")
                      << (res->unit_constant_term ? ", unit constant term" : "") << "\n";
            return 0;
        }
        if (lin->parsed()) {
            std::ifstream in(lin_file);
            if (!in) {
                std::cerr << "lindep: cannot open " << lin_file << "\n";
                return 2;
            }
            std::vector<BigComplex> vals;
            std::string line;
            while (std::getline(in, line))
                if (!line.empty()) vals.push_back(parse_complex(line, prec));
            auto rel = lindep(vals, ctx, lin_bound);
            if (!rel) {
                std::cout << "none\n";
                return 0;
            }
            std::cout << "relation: ";
            for (const auto& c : *rel) std::cout << c.get_str() << " ";
            BigComplex acc(prec);
            for (size_t i = 0; i < vals.size(); i++)
                acc += vals[i] * BigComplex::from_mpq(mpq_class((*rel)[i]), prec);
            std::cout << "\nresidual: 1e" << (int)acc.log10_abs() << "\n";
            return 0;
        }
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "numeric domain error: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

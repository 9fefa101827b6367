#include "doctest.h"

#include "ellgr/fixture.hpp"
#include "ellgr/runner.hpp"

using namespace ellgr;

namespace {

const char* kCubic = R"JSON({
  "schema": 1,
  "name": "cubic_demo",
  "kind": "standard",
  "note": "paper:5.1-ex2",
  "precision_digits": 40,
  "min_poly": ["-2", "0", "0", "1"],
  "r": 1,
  "q": "3",
  "smoothing_norm": "5",
  "ok_basis": [["1","0","0"],["0","1","0"],["0","0","1"]],
  "f_basis": [["1","0","2"],["0","1","1"],["0","0","3"]],
  "units": [["-1","1","0"]],
  "perm_order": [[1]],
  "zfone": {"radius": 5, "expected": [[1,1],[2,-1]]},
  "kappa": 2,
  "per_rho": [{"expected_tilde": {"lambda":"1","s":"1","t":"1"}}],
  "classes": [{
    "name": "b1",
    "b_norm": "1",
    "L_basis": [["1","0","2"],["0","1","1"],["0","0","3"]],
    "aL_basis": [["1/5","2/5","4/5"],["0","1","1"],["0","0","3"]],
    "h": [["3","6","-3"]],
    "expected_level": ["15"],
    "expected_t": ["1"],
    "checks": [
      {"type":"value","name":"unit_value","spec":{"mu":-1,"n":1,"outer":-1},
       "re":"-1.2937005","im":"1.4743341","note":"paper:5.1-ex2"},
      {"type":"invariance","name":"shift_by_4",
       "spec":{"mu":-1,"n":4,"outer":-1},"rhs":{"mu":-1,"n":1,"outer":-1}},
      {"type":"algdep","name":"minpoly","of":"rho_product","degree":6,
       "coeffs":["1","3","6","5","6","3","1"],"tol_log10":-15,
       "note":"paper:5.1-ex2"}
    ]
  }]
})JSON";

} // namespace

TEST_CASE("fixture parsing and round trip")
{
    Fixture fx = parse_fixture(kCubic);
    CHECK(fx.name == "cubic_demo");
    CHECK(fx.r == 1);
    CHECK(fx.q == 3);
    CHECK(fx.classes.size() == 1);
    CHECK(fx.classes[0].checks.size() == 3);
    CHECK(fx.zfone_expected.size() == 2);

    std::string s1 = serialize_fixture(fx);
    Fixture fx2 = parse_fixture(s1);
    std::string s2 = serialize_fixture(fx2);
    CHECK(s1 == s2);
}

TEST_CASE("run_example end to end on the cubic demo")
{
    Fixture fx = parse_fixture(kCubic);
    RunOptions opt;
    opt.threads = 2;
    RunReport rep = run_example(fx, opt);
    for (const auto& st : rep.stages) {
        CAPTURE(st.name);
        CAPTURE(st.detail);
        CHECK(st.status == "pass");
    }
    CHECK(rep.ok);

    // determinism: two runs produce the same report byte for byte
    RunReport rep2 = run_example(fx, opt);
    CHECK(rep.to_json() == rep2.to_json());

    // guard digits do not change any reported value
    RunOptions wide = opt;
    wide.guard = 40;
    RunReport rep3 = run_example(fx, wide);
    CHECK(rep3.ok);
}

TEST_CASE("malformed fixtures are parse errors")
{
    CHECK_THROWS_AS((void)parse_fixture("{"), parse_error);
    CHECK_THROWS_AS((void)parse_fixture("{\"schema\": 2, \"min_poly\": [\"1\"]}"), parse_error);
}

#ifndef ELLGR_RUNNER_HPP
#define ELLGR_RUNNER_HPP

#include <string>
#include <vector>

#include "ellgr/fixture.hpp"

namespace ellgr {

struct StageResult {
    std::string name;
    std::string status; // pass | fail | skip
    std::string detail;
    std::string citation;
    double residual_log10 = 0; // 0 when not applicable
};

struct RunOptions {
    long digits = 0;       // 0: use the fixture's precision
    long guard = 20;
    int threads = 1;
    bool setup_only = false;
    unsigned long seed = 0;
};

struct RunReport {
    std::string fixture_name;
    long digits = 0;
    bool ok = true;
    std::vector<StageResult> stages;

    std::string to_json() const;
    void add(StageResult s);
};

// executes every stage of a fixture: validation, per-class/per-rho setups,
// star conditions, target/helper verification, admissibility, Z_f^1,
// orientations, values, invariance, kappa, algdep
RunReport run_example(const Fixture& fx, const RunOptions& opt);

} // namespace ellgr

#endif

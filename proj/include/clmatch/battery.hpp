#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace clmatch {

struct BatteryOptions {
    bool quick = false;  // trimmed sweep sizes for smoke runs
    bool serial = false; // force single-threaded sweeps
    std::uint64_t seed = 0xC1A55EED5EEDULL;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    long checked = 0;   // instances or events examined
    std::string detail; // first failure, or summary counts on pass
    double seconds = 0.0;
};

// The sweep primitive behind every criterion: runs body over [0, total),
// OpenMP-parallel unless serial is set, and reports the lowest failing index
// so parallel and serial runs agree bit for bit. body returns "" on pass.
// Exceptions escaping body count as failures, never propagate.
struct SweepOutcome {
    bool ok = true;
    long first_fail = -1;
    std::string message;
};
SweepOutcome sweep_instances(long total, bool serial,
                             const std::function<std::string(long)>& body);

std::vector<int> battery_criteria();
CriterionResult run_criterion(int id, const BatteryOptions& opts);
std::vector<CriterionResult> run_battery(
    const BatteryOptions& opts,
    const std::function<void(const CriterionResult&)>& progress = {});

} // namespace clmatch

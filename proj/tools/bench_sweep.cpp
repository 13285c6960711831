// Times acceptance sweeps twice, single-threaded and OpenMP-parallel, and
// prints the speedup. Sweep results must agree between the two runs.
#include <cstdio>
#include <string>
#include <vector>

#include "clmatch/battery.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

int main(int argc, char** argv) {
    using namespace clmatch;
    std::vector<int> ids;
    bool quick = false;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--quick") {
            quick = true;
        } else if (a == "--help" || a == "-h") {
            std::printf("usage: clmatch-bench [--quick] [criterion ids...]\n");
            return 0;
        } else {
            try {
                ids.push_back(std::stoi(a));
            } catch (...) {
                std::fprintf(stderr, "not a criterion id: %s\n", a.c_str());
                return 1;
            }
        }
    }
    if (ids.empty()) ids = {1, 2, 9};

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled at build time\n");
#endif
    std::printf("%-9s  %-55s %9s %9s %8s\n", "criterion", "name", "serial", "parallel",
                "speedup");
    for (int id : ids) {
        BatteryOptions o;
        o.quick = quick;
        o.serial = true;
        CriterionResult rs = run_criterion(id, o);
        o.serial = false;
        CriterionResult rp = run_criterion(id, o);
        if (!rs.passed || !rp.passed) {
            std::fprintf(stderr, "criterion %d failed during benchmark: %s\n", id,
                         (!rs.passed ? rs.detail : rp.detail).c_str());
            return 1;
        }
        if (rs.checked != rp.checked) {
            std::fprintf(stderr, "criterion %d: serial and parallel disagree on checks\n", id);
            return 1;
        }
        std::printf("%-9d  %-55s %8.2fs %8.2fs %7.2fx\n", id, rs.name.c_str(), rs.seconds,
                    rp.seconds, rs.seconds / (rp.seconds > 0 ? rp.seconds : 1e-9));
    }
    return 0;
}

// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance                 all criteria
//   acceptance --criterion N   only N; exit status 1 on failure

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "checks.hpp"

int main(int argc, char** argv)
{
    using namespace cuspdet::checks;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
            return 2;
        }
    }
    if (only < 0 || only > num_criteria) {
        std::fprintf(stderr, "criterion must be 1..%d\n", num_criteria);
        return 2;
    }
    int failed = 0;
    for (int id = 1; id <= num_criteria; ++id) {
        if (only && id != only) continue;
        const CheckResult r = run_criterion(id);
        std::printf("[%s] %d. %s: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
        for (const auto& line : r.info) std::printf("       info: %s\n", line.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failed;
    }
    return failed ? 1 : 0;
}

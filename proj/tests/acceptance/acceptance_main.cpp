#include "cis/acceptance.hpp"

#include <cstdio>
#include <cstring>

int main(int argc, char** argv) {
    auto level = cis::cli::Level::Full;
    if (argc > 1 && std::strcmp(argv[1], "--quick") == 0) level = cis::cli::Level::Quick;
    int failed = 0;
    cis::cli::run_acceptance(level, [&failed](const cis::cli::CriterionResult& r) {
        failed += !r.passed;
        std::printf("[%s] %2d %-28s %8.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                    r.detail.c_str());
        std::fflush(stdout);
    });
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}

// Acceptance suite: runs every validation criterion at its pinned tolerance
// and prints one pass/fail line per check. Exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <exception>

#include "swe/validate.hpp"

int main() {
    using Clock = std::chrono::steady_clock;
    int failed = 0;
    int total = 0;
    int criterion = 0;

    for (const std::string& suite : swe::validation_suite_names()) {
        ++criterion;
        const auto t0 = Clock::now();
        try {
            for (const swe::CheckResult& r : swe::run_validation_suite(suite)) {
                ++total;
                if (!r.pass) ++failed;
                std::printf("[%s] criterion %d (%s): %s - %s\n", r.pass ? "PASS" : "FAIL",
                            criterion, suite.c_str(), r.name.c_str(), r.detail.c_str());
            }
        } catch (const std::exception& e) {
            ++total;
            ++failed;
            std::printf("[FAIL] criterion %d (%s): threw %s\n", criterion, suite.c_str(),
                        e.what());
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::printf("       criterion %d runtime: %.2fs\n", criterion, secs);
        std::fflush(stdout);
    }

    std::printf("%d/%d checks passed\n", total - failed, total);
    return failed == 0 ? 0 : 1;
}

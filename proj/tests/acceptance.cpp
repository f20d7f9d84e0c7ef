// Runs the full acceptance suite and prints one line per criterion.
// Exit status is nonzero if anything fails.

#include <dwork/selftest.hpp>

#include <cstdio>

int main() {
    auto results = dwork::run_acceptance();
    bool all = true;
    for (auto& r : results) {
        std::printf("criterion %2d [%s] %-40s (%.1fs)%s%s\n", r.id,
                    r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                    r.detail.empty() ? "" : " - ", r.detail.c_str());
        all = all && r.passed;
    }
    std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES above");
    return all ? 0 : 1;
}

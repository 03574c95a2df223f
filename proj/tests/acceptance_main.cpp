// Acceptance suite: runs every verification criterion and prints one
// pass/fail line each. Exits nonzero if any criterion fails.

#include <cstdio>
#include <string>

#include "ascurves/verify.hpp"

int main() {
    const auto results = ascurves::verify::run_all();
    int failed = 0;
    for (const auto& r : results) {
        std::string timing = std::to_string(r.seconds);
        timing.resize(timing.find('.') + 3);
        if (r.time_limit > 0) timing += "s / limit " + std::to_string(static_cast<int>(r.time_limit));
        std::printf("[criterion %2d] %s  %s  (%s; %ss)\n", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str(), timing.c_str());
        if (!r.pass) ++failed;
    }
    std::printf("%zu/%zu criteria passed\n", results.size() - failed, results.size());
    return failed == 0 ? 0 : 1;
}

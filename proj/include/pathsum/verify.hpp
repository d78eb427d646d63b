// verify.hpp - build self-check: runs every module's invariant suite with a
// seeded generator and reports pass/fail counts plus worst residuals.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pathsum {

struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    double worst_residual = 0.0;
};

struct VerifyReport {
    std::vector<SuiteResult> suites;

    bool all_passed() const {
        for (const auto& s : suites)
            if (s.failures > 0) return false;
        return true;
    }
};

VerifyReport run_verify(std::uint64_t seed, double degeneracy_tol, double oracle_tol);

}  // namespace pathsum

// runner.hpp - command dispatch: RunConfig in, ResultSet out
#pragma once

#include "pathsum/config.hpp"
#include "pathsum/output.hpp"

namespace pathsum {

/// Executes the configured command. Deterministic for a fixed config
/// (including the seed used by the randomized verify suites).
ResultSet run(const RunConfig& config);

}  // namespace pathsum

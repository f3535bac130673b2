// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pearsonchaos {

/// Seeded Monte Carlo draws with provenance. Identical (seed, provenance)
/// always reproduces identical values.
struct SampleBatch {
    std::vector<double> values;
    std::uint64_t seed = 0;
    std::string provenance;  // "direct-sampler", "sde(dt=..,steps=..,burnin=..)", "chaos-eval(..)"
};

}  // namespace pearsonchaos

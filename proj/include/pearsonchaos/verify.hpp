// SPDX-License-Identifier: MIT
//
// Randomized verification suites behind `pearsonchaos verify` and the
// acceptance tests: exact generator identities, moment/coefficient tables,
// chaos grade laws, and Stein consistency.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pearsonchaos/rng.hpp"
#include "pearsonchaos/spectral.hpp"
#include "pearsonchaos/tensor.hpp"

namespace pearsonchaos {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string note;
};

/// Random parameters with b2 < 1/3, b(m) > 0 and the natural support; small
/// rational entries so exact arithmetic stays fast.
PearsonParams random_fourmoment_params(CounterStream& rng);

/// Random parameters admitting chaotic eigenfunctions of the given degree
/// (b2 < 1/(4 degree - 1)).
PearsonParams random_chaotic_params(CounterStream& rng, int degree);

/// Random polynomial with small rational coefficients.
Poly random_poly(CounterStream& rng, int max_degree);

/// Random chaotic tensor element (mixed Pearson coordinates, per-coordinate
/// degrees <= max_degree, dimension <= max_dim) within one eigenvalue class.
ChaosElement random_chaotic_element(CounterStream& rng, int max_dim, int max_degree);

/// Exact identities: L1 = 0, integration by parts, diffusion property,
/// self-adjointness, invariance of mu, Gamma positivity, the carre du champ
/// characterization for G = x, and the gamma/Q identity residual.
std::vector<CheckResult> verify_identities(std::uint64_t seed, int trials);

/// Closed-form moments and the U/Q^2 coefficient table, exact over a sweep.
std::vector<CheckResult> verify_table1(std::uint64_t seed, int trials);

/// Chaos grade laws: thresholds, eigenvalue ratios, ranges per family,
/// monotonicity, scaling invariance, tensor sandwich.
std::vector<CheckResult> verify_grades(std::uint64_t seed);

/// sigma^2 from the density vs 2 theta b(x) across the six classes.
std::vector<CheckResult> verify_stein();

}  // namespace pearsonchaos

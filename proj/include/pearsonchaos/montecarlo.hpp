// SPDX-License-Identifier: MIT
//
// SDE simulation of Pearson diffusions, empirical distances, chaos-element
// sampling, and end-to-end convergence experiments.
#pragma once

#include <optional>
#include <vector>

#include "pearsonchaos/fourmoments.hpp"
#include "pearsonchaos/sample_batch.hpp"

namespace pearsonchaos {

/// Explicit Euler-Maruyama for dX = -theta(X-m)dt + sqrt(2 theta b(X)) dB.
/// Steps leaving the closed support are clamped to the interior at distance
/// 1e-12 from the boundary; burn-in of max(10/(theta dt), 1e4) steps runs
/// before recording `steps` values. Requires dt*theta < 1/2 and x0 interior.
SampleBatch euler_maruyama(const PearsonParams& params, double x0, double dt, long steps,
                           std::uint64_t seed);

/// sup over sample points of |ECDF - cdf|.
double kolmogorov_distance(const SampleBatch& samples, const Distribution& target);

/// Two-sample variant: sup |ECDF_a - ECDF_b|.
double kolmogorov_distance(const SampleBatch& a, const SampleBatch& b);

/// Lower estimate of the Fortet-Mourier distance: maximization over a fixed
/// dictionary of bounded 1-Lipschitz functions (clipped ramps and hats on a
/// pooled quantile grid).
double bounded_lipschitz_distance(const SampleBatch& a, const SampleBatch& b);

/// n evaluations of G = F + shift at product-measure draws; coordinate draws
/// use counter streams keyed by (coordinate, draw), so batches are
/// reproducible bitwise.
SampleBatch chaos_sample(const ChaosElement& elem, std::uint64_t seed, long n);

struct ConvergenceRow {
    long k = 0;
    double m1 = 0, m2 = 0, m3 = 0, m4 = 0;  // empirical moments of G
    double U_value = 0, Q2_value = 0;       // exact when available, else MC plug-in
    Rat eta = Rat(0), xi = Rat(0);
    double kolmogorov = 0;
    double bound = 0;
    bool exact_values = false;               // U_value/Q2_value exact?
    std::optional<Rat> U_exact, Q2_exact;
};

enum class ChaosFamily {
    /// Degree-2 homogeneous sums with equal coefficients on a perfect
    /// matching (k/2 disjoint pairs), normalized to unit variance.
    MatchingPairs,
    /// Degree-2 homogeneous sums with equal coefficients on all off-diagonal
    /// pairs (Gaussian base only); converges to a Gamma-type law, kept as a
    /// negative control.
    CompleteGraph,
    /// G = x under the target's own generator (law equals the target).
    SelfFirstChaos,
};

struct ExperimentDescriptor {
    PearsonParams target;
    ChaosFamily family = ChaosFamily::MatchingPairs;
    std::vector<long> k_grid;  // strictly increasing
    long mc_n = 100000;        // >= 1000
    std::uint64_t seed = 0;
    std::string output;        // CSV path ("" = caller handles output)

    void validate() const;
};

std::vector<ConvergenceRow> run_convergence(const ExperimentDescriptor& descriptor);

const char* family_name(ChaosFamily family);
std::optional<ChaosFamily> family_from_name(const std::string& name);

}  // namespace pearsonchaos

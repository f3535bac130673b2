// SPDX-License-Identifier: MIT
//
// Stein machinery for absolutely continuous targets: sigma^2 recovered from
// the density, tau = sigma^2/2 on the support, the explicit Stein equation
// solution, and sample-based Stein discrepancies over polynomial test
// families.
#pragma once

#include <functional>
#include <span>

#include "pearsonchaos/pearson.hpp"

namespace pearsonchaos {

struct DensityTarget {
    std::function<double(double)> pdf;  // normalized density
    double l, u;                        // support, -inf/+inf allowed
    double mean;
    double theta;
    /// Optional closed form for tau (Pearson targets: theta*b(x)); used by
    /// hot paths, always consistent with sigma2_from_density to quadrature
    /// accuracy.
    std::function<double(double)> tau_closed;
};

/// Wraps a Pearson law; tau_closed = theta * b(x).
DensityTarget density_target(const PearsonParams& params);

/// General density; set validate to check normalization (1e-8) and a finite
/// first absolute moment on truncated tails.
DensityTarget density_target(std::function<double(double)> pdf, double l, double u, double mean,
                             double theta, bool validate = true);

/// -2 theta int_l^x (y - mean) p(y) dy / p(x); adaptive quadrature
/// with absolute error <= 1e-10, using the right-tail integral above the
/// mean for stability.
double sigma2_from_density(const DensityTarget& target, double x);

/// tau(x) = sigma^2(x)/2 inside the support, 0 outside.
double tau(const DensityTarget& target, double x);

class SteinSolution {
public:
    SteinSolution(const DensityTarget& target, std::function<double(double)> h);

    double expectation_h() const { return expected_h_; }
    /// f_h(x); inside the support via the quadrature form (left or right
    /// integral picked for stability), outside via -(h(x)-Eh)/(theta(x-m)).
    /// Throws Error at the pole x == mean outside the support.
    double operator()(double x) const;

private:
    const DensityTarget target_;
    std::function<double(double)> h_;
    double expected_h_;
};

/// max over monomials phi(x) = x^j, j = 0..max_degree, of
/// |mean(tau(X) phi'(X) - theta (X - m) phi(X))|.
double stein_discrepancy(std::span<const double> samples, const DensityTarget& target,
                         int max_degree);

}  // namespace pearsonchaos

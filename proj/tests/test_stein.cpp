// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>

#include "pearsonchaos/stein.hpp"
#include "pearsonchaos/verify.hpp"

using namespace pearsonchaos;

TEST_CASE("sigma^2 from the density") {
    const DensityTarget gauss = density_target(gaussian_params(Rat(0), Rat(1)));
    for (double x : {-1.5, -0.3, 0.0, 0.7, 2.1})
        CHECK(sigma2_from_density(gauss, x) == doctest::Approx(2.0).epsilon(1e-8));

    // vanishes toward a finite endpoint
    const DensityTarget beta = density_target(beta_params(Rat(2), Rat(3)));
    CHECK(sigma2_from_density(beta, 1.0 - 1e-6) < 1e-4);
    CHECK_THROWS_AS(sigma2_from_density(beta, 1.5), Error);
}

TEST_CASE("sigma^2 equals 2 theta b(x) across the six classes") {
    for (const auto& r : verify_stein()) {
        INFO(r.name << ": " << r.note);
        CHECK(r.pass);
    }
}

TEST_CASE("tau vanishes outside the support") {
    const DensityTarget beta = density_target(beta_params(Rat(2), Rat(2)));
    CHECK(tau(beta, -0.5) == 0.0);
    CHECK(tau(beta, 1.5) == 0.0);
    CHECK(tau(beta, 0.5) == doctest::Approx(to_double(Rat(beta_params(Rat(2), Rat(2)).b().eval(rat(1, 2))))));

    const DensityTarget gauss = density_target(gaussian_params(Rat(0), Rat(1)));
    CHECK(tau(gauss, 0.3) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("Stein equation solutions") {
    const DensityTarget gauss = density_target(gaussian_params(Rat(0), Rat(1)));

    const SteinSolution constant(gauss, [](double) { return 4.0; });
    for (double x : {-1.0, 0.2, 1.7}) CHECK(constant(x) == doctest::Approx(0.0).epsilon(1e-9));

    // h(x) = x on the standard normal: the analytic solution of f' - xf = x
    // is f = -1
    const SteinSolution linear(gauss, [](double x) { return x; });
    for (double x : {-2.0, -0.5, 0.0, 1.0, 2.5})
        CHECK(linear(x) == doctest::Approx(-1.0).epsilon(1e-8));

    // round trip: tau f' - theta (x - m) f reproduces h - Eh on a grid
    auto h = [](double x) { return std::sin(x); };
    const SteinSolution fh(gauss, h);
    for (double x : {-2.0, -1.1, -0.4, 0.3, 0.9, 1.8}) {
        const double step = 1e-6;
        const double df = (fh(x + step) - fh(x - step)) / (2.0 * step);
        const double lhs = tau(gauss, x) * df - 1.0 * x * fh(x);
        CHECK(lhs == doctest::Approx(h(x) - fh.expectation_h()).epsilon(1e-6));
    }

    // outside the support the explicit form applies; the pole sits at the mean
    const DensityTarget beta = density_target(beta_params(Rat(2), Rat(2)));
    const SteinSolution outside(beta, [](double x) { return x; });
    CHECK(std::isfinite(outside(2.0)));

    DensityTarget shifted = beta;
    shifted.mean = 2.0;  // artificial: pole outside the support
    const SteinSolution at_pole(shifted, [](double x) { return x; });
    CHECK_THROWS_AS(at_pole(2.0), Error);
}

TEST_CASE("Lemma 2.2 qualitative check: bounded f_h'") {
    const std::vector<PearsonParams> targets = {gaussian_params(Rat(0), Rat(1)),
                                                student_params(Rat(9))};
    for (const auto& params : targets) {
        const DensityTarget target = density_target(params);
        const SteinSolution fh(target, [](double x) { return std::sin(x); });
        double worst = 0.0;
        for (int i = -20; i <= 20; ++i) {
            const double x = 0.4 * i;
            const double step = 1e-5;
            worst = std::max(worst, std::abs(fh(x + step) - fh(x - step)) / (2.0 * step));
        }
        CHECK(worst < 50.0);
        CHECK(std::isfinite(worst));
    }
}

TEST_CASE("Stein discrepancy") {
    const PearsonParams params = gaussian_params(Rat(0), Rat(1));
    const DensityTarget target = density_target(params);
    const Distribution dist(params);

    // target-distributed samples: each test statistic within 3 standard errors
    const auto batch = dist.sample(5, 1000000);
    const double n = static_cast<double>(batch.values.size());
    for (int j = 0; j <= 4; ++j) {
        double acc = 0.0, acc2 = 0.0;
        for (double x : batch.values) {
            const double phi = j == 0 ? 1.0 : std::pow(x, j);
            const double dphi = j == 0 ? 0.0 : j * std::pow(x, j - 1);
            const double y = target.tau_closed(x) * dphi - 1.0 * x * phi;
            acc += y;
            acc2 += y * y;
        }
        const double mean = acc / n;
        const double se = std::sqrt((acc2 / n - mean * mean) / n);
        CHECK(std::abs(mean) <= 3.0 * se);
    }

    // phi = 1 contributes theta |mean - m|
    std::vector<double> shifted_vals(batch.values);
    for (double& v : shifted_vals) v += 1.0;
    SampleBatch shifted{shifted_vals, 5, "shifted"};
    const double d = stein_discrepancy(shifted.values, target, 0);
    CHECK(d == doctest::Approx(1.0).epsilon(5e-3));  // theta * |shift|

    // discrepancy of the shifted law stays away from zero
    CHECK(stein_discrepancy(shifted.values, target, 3) >= 0.5);
}

// SPDX-License-Identifier: MIT
#include "pearsonchaos/stein.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <memory>

#include "pearsonchaos/errors.hpp"

namespace pearsonchaos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// int_a^b f, a/b possibly infinite; tanh_sinh handles endpoint singularities
double integrate_interval(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-12) {
    if (a >= b) return 0.0;
    if (std::isinf(a) && std::isinf(b)) {
        boost::math::quadrature::exp_sinh<double> left;
        boost::math::quadrature::exp_sinh<double> right;
        auto mirrored = [&f](double t) { return f(-t); };
        return right.integrate(f, 0.0, kInf, tol) + left.integrate(mirrored, 0.0, kInf, tol);
    }
    if (std::isinf(b)) {
        boost::math::quadrature::exp_sinh<double> integ;
        auto shifted = [&f, a](double t) { return f(a + t); };
        return integ.integrate(shifted, 0.0, kInf, tol);
    }
    if (std::isinf(a)) {
        boost::math::quadrature::exp_sinh<double> integ;
        auto shifted = [&f, b](double t) { return f(b - t); };
        return integ.integrate(shifted, 0.0, kInf, tol);
    }
    boost::math::quadrature::tanh_sinh<double> integ;
    return integ.integrate(f, a, b, 1e-10);
}

}  // namespace

DensityTarget density_target(const PearsonParams& params) {
    auto dist = std::make_shared<Distribution>(params);
    DensityTarget t;
    t.pdf = [dist](double x) { return dist->density(x); };
    t.l = params.support_l;
    t.u = params.support_u;
    t.mean = to_double(params.m);
    t.theta = to_double(params.theta);
    const Poly b = params.b();
    const double theta = t.theta;
    const double lo = t.l, hi = t.u;
    t.tau_closed = [b, theta, lo, hi](double x) {
        if (x <= lo || x >= hi) return 0.0;
        return theta * b.eval(x);
    };
    return t;
}

DensityTarget density_target(std::function<double(double)> pdf, double l, double u, double mean,
                             double theta, bool validate) {
    if (theta <= 0) throw ClassError("theta must be positive");
    if (!(l < u)) throw ClassError("empty support interval");
    DensityTarget t;
    t.pdf = std::move(pdf);
    t.l = l;
    t.u = u;
    t.mean = mean;
    t.theta = theta;
    if (validate) {
        const double total = integrate_interval([&t](double x) { return t.pdf(x); }, l, u, 1e-10);
        if (std::abs(total - 1.0) > 1e-8)
            throw ClassError("density does not integrate to one");
        const double abs_first =
            integrate_interval([&t](double x) { return std::abs(x) * t.pdf(x); }, l, u, 1e-8);
        if (!std::isfinite(abs_first))
            throw ClassError("density lacks a first absolute moment");
    }
    return t;
}

double sigma2_from_density(const DensityTarget& target, double x) {
    if (!(x > target.l && x < target.u))
        throw Error("sigma2 is defined on the open support only");
    const double px = target.pdf(x);
    if (px <= 0.0) throw Error("density vanishes inside the support");
    const double m = target.mean;
    double numerator;
    if (x < m) {
        numerator = -2.0 * target.theta *
                    integrate_interval([&](double y) { return (y - m) * target.pdf(y); },
                                       target.l, x);
    } else {
        // int_l^x (y-m) p = -int_x^u (y-m) p since the full integral vanishes
        numerator = 2.0 * target.theta *
                    integrate_interval([&](double y) { return (y - m) * target.pdf(y); }, x,
                                       target.u);
    }
    return std::max(0.0, numerator / px);
}

double tau(const DensityTarget& target, double x) {
    if (!(x > target.l && x < target.u)) return 0.0;
    return 0.5 * sigma2_from_density(target, x);
}

SteinSolution::SteinSolution(const DensityTarget& target, std::function<double(double)> h)
    : target_(target), h_(std::move(h)) {
    expected_h_ = integrate_interval([this](double y) { return h_(y) * target_.pdf(y); },
                                     target_.l, target_.u, 1e-10);
}

double SteinSolution::operator()(double x) const {
    const double eh = expected_h_;
    if (!(x > target_.l && x < target_.u)) {
        const double denom = target_.theta * (x - target_.mean);
        if (denom == 0.0) throw Error("Stein solution undefined at x = mean outside the support");
        return -(h_(x) - eh) / denom;
    }
    const double tau_x =
        target_.tau_closed ? target_.tau_closed(x) : 0.5 * sigma2_from_density(target_, x);
    const double px = target_.pdf(x);
    if (tau_x <= 0.0 || px <= 0.0) throw Error("Stein solution needs tau(x), p(x) > 0");
    double integral;
    if (x < target_.mean) {
        integral = integrate_interval(
            [this, eh](double y) { return (h_(y) - eh) * target_.pdf(y); }, target_.l, x);
    } else {
        integral = -integrate_interval(
            [this, eh](double y) { return (h_(y) - eh) * target_.pdf(y); }, x, target_.u);
    }
    return integral / (tau_x * px);
}

double stein_discrepancy(std::span<const double> samples, const DensityTarget& target,
                         int max_degree) {
    if (samples.empty()) throw Error("stein_discrepancy needs samples");
    if (max_degree < 0) throw Error("max_degree must be nonnegative");
    const double n = static_cast<double>(samples.size());
    double worst = 0.0;
    for (int j = 0; j <= max_degree; ++j) {
        double acc = 0.0;
        for (double x : samples) {
            const double tau_x =
                target.tau_closed ? target.tau_closed(x)
                                  : (x > target.l && x < target.u
                                         ? 0.5 * sigma2_from_density(target, x)
                                         : 0.0);
            const double phi = j == 0 ? 1.0 : std::pow(x, j);
            const double dphi = j == 0 ? 0.0 : j * std::pow(x, j - 1);
            acc += tau_x * dphi - target.theta * (x - target.mean) * phi;
        }
        worst = std::max(worst, std::abs(acc / n));
    }
    return worst;
}

}  // namespace pearsonchaos

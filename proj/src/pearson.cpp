// SPDX-License-Identifier: MIT
#include "pearsonchaos/pearson.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <sstream>

#include "pearsonchaos/errors.hpp"

namespace pearsonchaos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool close(double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return a == b;
    return std::abs(a - b) <= 1e-9 * (1.0 + std::max(std::abs(a), std::abs(b)));
}

struct QuadRoots {
    double lo, hi;
};

// b2 != 0, D > 0; numerically stable quadratic roots of b2 x^2 + b1 x + b0
QuadRoots real_roots(double b2, double b1, double b0, double disc) {
    const double q = -0.5 * (b1 + std::copysign(std::sqrt(disc), b1));
    double r1, r2;
    if (q != 0.0) {
        r1 = q / b2;
        r2 = b0 / q;
    } else {
        r1 = 0.0;
        r2 = 0.0;
    }
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

double skewt_phi_integral(double shape, double nu, double phi_hi) {
    boost::math::quadrature::tanh_sinh<double> integ;
    const double e = 2.0 * shape - 2.0;
    auto f = [&](double phi) {
        return std::pow(std::cos(phi), e) * std::exp(-nu * phi);
    };
    return integ.integrate(f, -M_PI / 2.0, phi_hi, 1e-13);
}

}  // namespace

Poly PearsonParams::b() const { return Poly({b0, b1, b2}); }

void PearsonParams::validate() const {
    if (theta <= 0) throw ClassError("theta must be positive");
    if (!(support_l < support_u)) throw ClassError("empty support interval");
    const double md = to_double(m);
    if (!(md > support_l && md < support_u)) throw ClassError("mean outside the support");
    Rat bm = b().eval(m);
    if (bm <= 0) throw ClassError("b(m) must be positive");
    const Poly bp = b();
    for (double e : {support_l, support_u}) {
        if (std::isinf(e)) continue;
        const double be = bp.eval(e);
        const double scale =
            std::abs(to_double(b0)) + std::abs(to_double(b1) * e) + std::abs(to_double(b2) * e * e);
        if (std::abs(be) > 1e-8 * (1.0 + scale))
            throw ClassError("finite support endpoint is not a root of b");
    }
}

PearsonParams PearsonParams::with_natural_support(Rat theta, Rat m, Rat b0, Rat b1, Rat b2) {
    PearsonParams p;
    p.theta = std::move(theta);
    p.m = std::move(m);
    p.b0 = std::move(b0);
    p.b1 = std::move(b1);
    p.b2 = std::move(b2);
    const Rat bm = p.b().eval(p.m);
    if (bm <= 0) throw ClassError("b(m) must be positive");
    const double md = to_double(p.m);

    if (p.b2 == 0) {
        if (p.b1 == 0) {
            // constant diffusion, full line
        } else {
            const double r = to_double(Rat(-p.b0 / p.b1));
            if (p.b1 > 0) {
                p.support_l = r;
            } else {
                p.support_u = r;
            }
        }
    } else {
        const Rat disc = Rat(p.b1 * p.b1 - 4 * p.b2 * p.b0);
        if (p.b2 < 0) {
            if (disc <= 0) throw ClassError("b is nowhere positive");
            const auto roots = real_roots(to_double(p.b2), to_double(p.b1), to_double(p.b0),
                                          to_double(disc));
            p.support_l = roots.lo;
            p.support_u = roots.hi;
        } else if (disc < 0) {
            // positive definite, full line
        } else if (disc == 0) {
            const double r = to_double(Rat(-p.b1 / (2 * p.b2)));
            if (md > r)
                p.support_l = r;
            else
                p.support_u = r;
        } else {
            const auto roots = real_roots(to_double(p.b2), to_double(p.b1), to_double(p.b0),
                                          to_double(disc));
            if (md > roots.hi)
                p.support_l = roots.hi;
            else if (md < roots.lo)
                p.support_u = roots.lo;
            else
                throw ClassError("mean lies between the roots of b");
        }
    }
    p.validate();
    return p;
}

const char* family_name(PearsonFamily f) {
    switch (f) {
        case PearsonFamily::Gaussian: return "gaussian";
        case PearsonFamily::Gamma: return "gamma";
        case PearsonFamily::Beta: return "beta";
        case PearsonFamily::SkewT: return "skew-t";
        case PearsonFamily::InverseGamma: return "inverse-gamma";
        case PearsonFamily::F: return "f";
    }
    return "?";
}

PearsonClass classify(const PearsonParams& params) {
    params.validate();
    const double md = to_double(params.m);
    const double b2d = to_double(params.b2);

    if (params.b2 == 0 && params.b1 == 0) {
        if (!(std::isinf(params.support_l) && std::isinf(params.support_u)))
            throw ClassError("constant b requires full-line support");
        return {PearsonFamily::Gaussian, GaussianLaw{md, to_double(params.b0)}, AffineMap{}};
    }
    if (params.b2 == 0) {
        const double r = to_double(Rat(-params.b0 / params.b1));
        if (params.b1 > 0) {
            if (!close(params.support_l, r) || !std::isinf(params.support_u))
                throw ClassError("gamma-type support must be (root, inf)");
            const double beta = to_double(Rat(1 / params.b1));
            const double alpha = (md - r) * beta;
            return {PearsonFamily::Gamma, GammaLaw{alpha, beta}, AffineMap{1.0, r}};
        }
        if (!close(params.support_u, r) || !std::isinf(params.support_l))
            throw ClassError("gamma-type support must be (-inf, root)");
        const double beta = to_double(Rat(-1 / params.b1));
        const double alpha = (r - md) * beta;
        return {PearsonFamily::Gamma, GammaLaw{alpha, beta}, AffineMap{-1.0, r}};
    }

    const Rat disc = Rat(params.b1 * params.b1 - 4 * params.b2 * params.b0);
    if (params.b2 < 0) {
        if (disc <= 0) throw ClassError("b is nowhere positive");
        const auto roots =
            real_roots(b2d, to_double(params.b1), to_double(params.b0), to_double(disc));
        if (!close(params.support_l, roots.lo) || !close(params.support_u, roots.hi))
            throw ClassError("beta-type support must be the root interval");
        const double ab = to_double(Rat(-1 / params.b2));  // alpha + beta
        const double mt = (md - roots.lo) / (roots.hi - roots.lo);
        return {PearsonFamily::Beta, BetaLaw{ab * mt, ab * (1.0 - mt)},
                AffineMap{roots.hi - roots.lo, roots.lo}};
    }

    if (disc < 0) {
        if (!(std::isinf(params.support_l) && std::isinf(params.support_u)))
            throw ClassError("skew-t support must be the full line");
        const double shape = to_double(Rat(1 + 1 / (2 * params.b2)));
        const double lambda = to_double(Rat(-params.b1 / (2 * params.b2)));
        const double scale =
            std::sqrt(to_double(Rat(params.b0 / params.b2)) - lambda * lambda);
        const double nu = (lambda - md) / (scale * b2d);
        return {PearsonFamily::SkewT, SkewTLaw{shape, nu, lambda, scale}, AffineMap{}};
    }
    if (disc == 0) {
        const double r = to_double(Rat(-params.b1 / (2 * params.b2)));
        const double alpha = to_double(Rat(1 + 1 / params.b2));
        if (md > r) {
            if (!close(params.support_l, r) || !std::isinf(params.support_u))
                throw ClassError("inverse-gamma support must be (root, inf)");
            return {PearsonFamily::InverseGamma, InverseGammaLaw{alpha, (md - r) / b2d},
                    AffineMap{1.0, r}};
        }
        if (!close(params.support_u, r) || !std::isinf(params.support_l))
            throw ClassError("inverse-gamma support must be (-inf, root)");
        return {PearsonFamily::InverseGamma, InverseGammaLaw{alpha, (r - md) / b2d},
                AffineMap{-1.0, r}};
    }

    const auto roots = real_roots(b2d, to_double(params.b1), to_double(params.b0), to_double(disc));
    const double d2 = to_double(Rat(2 + 2 / params.b2));
    const double mean_f = 1.0 + b2d;  // d2/(d2-2)
    double e, o;
    if (md > roots.hi) {
        if (!close(params.support_l, roots.hi) || !std::isinf(params.support_u))
            throw ClassError("f-type support must be (upper root, inf)");
        e = roots.hi;
        o = roots.lo;
    } else {
        if (!close(params.support_u, roots.lo) || !std::isinf(params.support_l))
            throw ClassError("f-type support must be (-inf, lower root)");
        e = roots.lo;
        o = roots.hi;
    }
    const double s = mean_f / (md - e);  // Y = s (X - e)
    const double d1 = d2 / (s * (e - o));
    return {PearsonFamily::F, FLaw{d1, d2}, AffineMap{1.0 / s, e}};
}

PearsonParams gaussian_params(const Rat& m, const Rat& sigma2, const Rat& theta) {
    if (sigma2 <= 0) throw ClassError("sigma2 must be positive");
    return PearsonParams::with_natural_support(theta, m, sigma2, Rat(0), Rat(0));
}

PearsonParams gamma_params(const Rat& alpha, const Rat& beta, const Rat& theta) {
    if (alpha <= 0 || beta <= 0) throw ClassError("gamma parameters must be positive");
    return PearsonParams::with_natural_support(theta, Rat(alpha / beta), Rat(0), Rat(1 / beta),
                                               Rat(0));
}

PearsonParams beta_params(const Rat& alpha, const Rat& beta, const Rat& theta) {
    if (alpha <= 0 || beta <= 0) throw ClassError("beta parameters must be positive");
    const Rat ab = Rat(alpha + beta);
    return PearsonParams::with_natural_support(theta, Rat(alpha / ab), Rat(0), Rat(1 / ab),
                                               Rat(-1 / ab));
}

PearsonParams skewt_params(const Rat& shape, const Rat& nu, const Rat& lambda, const Rat& scale,
                           const Rat& theta) {
    if (shape <= 1 || scale <= 0) throw ClassError("skew-t requires shape > 1, scale > 0");
    const Rat den = Rat(2 * (shape - 1));
    const Rat b2 = Rat(1 / den);
    const Rat b1 = Rat(-2 * lambda / den);
    const Rat b0 = Rat((lambda * lambda + scale * scale) / den);
    const Rat mean = Rat(lambda - scale * nu / den);
    return PearsonParams::with_natural_support(theta, mean, b0, b1, b2);
}

PearsonParams invgamma_params(const Rat& alpha, const Rat& beta, const Rat& theta) {
    if (alpha <= 1 || beta <= 0) throw ClassError("inverse-gamma requires alpha > 1, beta > 0");
    const Rat am1 = Rat(alpha - 1);
    return PearsonParams::with_natural_support(theta, Rat(beta / am1), Rat(0), Rat(0),
                                               Rat(1 / am1));
}

PearsonParams f_params(const Rat& d1, const Rat& d2, const Rat& theta) {
    if (d1 <= 0 || d2 <= 2) throw ClassError("f requires d1 > 0, d2 > 2");
    const Rat den = Rat(d2 - 2);
    return PearsonParams::with_natural_support(theta, Rat(d2 / den), Rat(0),
                                               Rat(2 * d2 / (d1 * den)), Rat(2 / den));
}

PearsonParams student_params(const Rat& tau, const Rat& theta) {
    if (tau <= 1) throw ClassError("student-t requires tau > 1");
    const Rat den = Rat(tau - 1);
    return PearsonParams::with_natural_support(theta, Rat(0), Rat(tau / den), Rat(0), Rat(1 / den));
}

std::optional<long> max_moment_order(const PearsonParams& params) {
    if (params.b2 <= 0) return std::nullopt;
    const Rat bound = Rat(1 + 1 / params.b2);  // p < bound
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), bound.get_num().get_mpz_t(), bound.get_den().get_mpz_t());
    long p = q.get_si();
    if (Rat(q) == bound) p -= 1;  // strict inequality
    return p;
}

std::vector<Rat> moments(const PearsonParams& params, int pmax) {
    if (pmax < 0) throw MomentError("pmax must be nonnegative");
    if (auto limit = max_moment_order(params); limit && pmax > *limit) {
        std::ostringstream msg;
        msg << "moment of order " << pmax << " does not exist (max " << *limit << ")";
        throw MomentError(msg.str());
    }
    std::vector<Rat> mom(static_cast<std::size_t>(pmax) + 1, Rat(0));
    mom[0] = Rat(1);
    if (pmax >= 1) mom[1] = params.m;
    for (int p = 0; p + 2 <= pmax; ++p) {
        const Rat den = Rat(1 - params.b2 * Rat(p + 1));
        if (den == 0) throw MomentError("moment recursion denominator vanished");
        mom[static_cast<std::size_t>(p) + 2] =
            Rat((Rat(params.b1 * Rat(p + 1) + params.m) * mom[static_cast<std::size_t>(p) + 1] +
                 Rat(p + 1) * params.b0 * mom[static_cast<std::size_t>(p)]) /
                den);
    }
    return mom;
}

Distribution::Distribution(PearsonParams params)
    : params_(std::move(params)), class_(classify(params_)) {
    switch (class_.family) {
        case PearsonFamily::Gaussian: {
            const auto& g = std::get<GaussianLaw>(class_.law);
            log_norm_ = -0.5 * std::log(2.0 * M_PI * g.sigma2);
            break;
        }
        case PearsonFamily::Gamma: {
            const auto& g = std::get<GammaLaw>(class_.law);
            log_norm_ = g.alpha * std::log(g.beta) - std::lgamma(g.alpha);
            break;
        }
        case PearsonFamily::Beta: {
            const auto& g = std::get<BetaLaw>(class_.law);
            log_norm_ = std::lgamma(g.alpha + g.beta) - std::lgamma(g.alpha) - std::lgamma(g.beta);
            break;
        }
        case PearsonFamily::SkewT: {
            const auto& g = std::get<SkewTLaw>(class_.law);
            const double integral = skewt_phi_integral(g.shape, g.nu, M_PI / 2.0);
            log_norm_ = -std::log(g.scale * integral);
            break;
        }
        case PearsonFamily::InverseGamma: {
            const auto& g = std::get<InverseGammaLaw>(class_.law);
            log_norm_ = g.alpha * std::log(g.beta) - std::lgamma(g.alpha);
            break;
        }
        case PearsonFamily::F: {
            const auto& g = std::get<FLaw>(class_.law);
            log_norm_ = 0.5 * g.d1 * std::log(g.d1 / g.d2) -
                        std::log(boost::math::beta(0.5 * g.d1, 0.5 * g.d2));
            break;
        }
    }
}

double Distribution::canonical_log_density(double y) const {
    switch (class_.family) {
        case PearsonFamily::Gaussian: {
            const auto& g = std::get<GaussianLaw>(class_.law);
            const double z = y - g.mean;
            return log_norm_ - 0.5 * z * z / g.sigma2;
        }
        case PearsonFamily::Gamma: {
            const auto& g = std::get<GammaLaw>(class_.law);
            return log_norm_ + (g.alpha - 1.0) * std::log(y) - g.beta * y;
        }
        case PearsonFamily::Beta: {
            const auto& g = std::get<BetaLaw>(class_.law);
            return log_norm_ + (g.alpha - 1.0) * std::log(y) + (g.beta - 1.0) * std::log1p(-y);
        }
        case PearsonFamily::SkewT: {
            const auto& g = std::get<SkewTLaw>(class_.law);
            const double z = (y - g.lambda) / g.scale;
            return log_norm_ - g.shape * std::log1p(z * z) - g.nu * std::atan(z);
        }
        case PearsonFamily::InverseGamma: {
            const auto& g = std::get<InverseGammaLaw>(class_.law);
            return log_norm_ - (g.alpha + 1.0) * std::log(y) - g.beta / y;
        }
        case PearsonFamily::F: {
            const auto& g = std::get<FLaw>(class_.law);
            return log_norm_ + (0.5 * g.d1 - 1.0) * std::log(y) -
                   0.5 * (g.d1 + g.d2) * std::log1p(g.d1 * y / g.d2);
        }
    }
    return -kInf;
}

double Distribution::log_density(double x) const {
    if (!params_.in_support(x)) return -kInf;
    const double y = (x - class_.map.shift) / class_.map.scale;
    return canonical_log_density(y) - std::log(std::abs(class_.map.scale));
}

double Distribution::density(double x) const {
    const double ld = log_density(x);
    return std::isinf(ld) ? 0.0 : std::exp(ld);
}

double Distribution::canonical_cdf(double y) const {
    switch (class_.family) {
        case PearsonFamily::Gaussian: {
            const auto& g = std::get<GaussianLaw>(class_.law);
            return 0.5 * boost::math::erfc(-(y - g.mean) / std::sqrt(2.0 * g.sigma2));
        }
        case PearsonFamily::Gamma: {
            const auto& g = std::get<GammaLaw>(class_.law);
            if (y <= 0.0) return 0.0;
            return boost::math::gamma_p(g.alpha, g.beta * y);
        }
        case PearsonFamily::Beta: {
            const auto& g = std::get<BetaLaw>(class_.law);
            if (y <= 0.0) return 0.0;
            if (y >= 1.0) return 1.0;
            return boost::math::ibeta(g.alpha, g.beta, y);
        }
        case PearsonFamily::SkewT: {
            const auto& g = std::get<SkewTLaw>(class_.law);
            const double z = (y - g.lambda) / g.scale;
            const double full = skewt_phi_integral(g.shape, g.nu, M_PI / 2.0);
            const double part = skewt_phi_integral(g.shape, g.nu, std::atan(z));
            return std::min(1.0, std::max(0.0, part / full));
        }
        case PearsonFamily::InverseGamma: {
            const auto& g = std::get<InverseGammaLaw>(class_.law);
            if (y <= 0.0) return 0.0;
            return boost::math::gamma_q(g.alpha, g.beta / y);
        }
        case PearsonFamily::F: {
            const auto& g = std::get<FLaw>(class_.law);
            if (y <= 0.0) return 0.0;
            const double t = g.d1 * y / (g.d1 * y + g.d2);
            return boost::math::ibeta(0.5 * g.d1, 0.5 * g.d2, t);
        }
    }
    return 0.0;
}

double Distribution::cdf(double x) const {
    if (x <= params_.support_l) return 0.0;
    if (x >= params_.support_u) return 1.0;
    const double y = (x - class_.map.shift) / class_.map.scale;
    const double fy = canonical_cdf(y);
    return class_.map.scale > 0 ? fy : 1.0 - fy;
}

double Distribution::canonical_sample(CounterStream& rng) const {
    switch (class_.family) {
        case PearsonFamily::Gaussian: {
            const auto& g = std::get<GaussianLaw>(class_.law);
            return g.mean + std::sqrt(g.sigma2) * rng.normal();
        }
        case PearsonFamily::Gamma: {
            const auto& g = std::get<GammaLaw>(class_.law);
            return rng.gamma(g.alpha) / g.beta;
        }
        case PearsonFamily::Beta: {
            const auto& g = std::get<BetaLaw>(class_.law);
            const double u = rng.gamma(g.alpha);
            const double v = rng.gamma(g.beta);
            return u / (u + v);
        }
        case PearsonFamily::SkewT: {
            // rejection against the student-t envelope matched at nu = 0
            const auto& g = std::get<SkewTLaw>(class_.law);
            const double tau = 2.0 * g.shape - 1.0;
            const double log_m = std::abs(g.nu) * M_PI / 2.0;
            for (;;) {
                const double t = rng.normal() / std::sqrt(rng.chi_squared(tau) / tau);
                const double z = t / std::sqrt(tau);
                if (std::log(rng.uniform()) <= -g.nu * std::atan(z) - log_m)
                    return g.lambda + g.scale * z;
            }
        }
        case PearsonFamily::InverseGamma: {
            const auto& g = std::get<InverseGammaLaw>(class_.law);
            return g.beta / rng.gamma(g.alpha);
        }
        case PearsonFamily::F: {
            const auto& g = std::get<FLaw>(class_.law);
            const double num = rng.chi_squared(g.d1) / g.d1;
            const double den = rng.chi_squared(g.d2) / g.d2;
            return num / den;
        }
    }
    return 0.0;
}

double Distribution::sample_one(CounterStream& rng) const {
    return class_.map.scale * canonical_sample(rng) + class_.map.shift;
}

SampleBatch Distribution::sample(std::uint64_t seed, long n) const {
    if (n < 1) throw Error("sample size must be >= 1");
    SampleBatch batch;
    batch.seed = seed;
    batch.provenance = "direct-sampler";
    batch.values.resize(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        CounterStream rng(seed, compose_stream(0, static_cast<std::uint64_t>(i)));
        batch.values[static_cast<std::size_t>(i)] = sample_one(rng);
    }
    return batch;
}

double density(const PearsonParams& params, double x) { return Distribution(params).density(x); }
double cdf(const PearsonParams& params, double x) { return Distribution(params).cdf(x); }
SampleBatch sample(const PearsonParams& params, std::uint64_t seed, long n) {
    return Distribution(params).sample(seed, n);
}

PearsonParams linear_transform(const PearsonParams& params, const Rat& gamma, const Rat& delta) {
    if (gamma == 0) throw ClassError("gamma must be nonzero");
    PearsonParams out;
    out.theta = params.theta;
    out.m = Rat(gamma * params.m + delta);
    out.b2 = params.b2;
    out.b1 = Rat(params.b1 * gamma - 2 * params.b2 * delta);
    out.b0 = Rat(params.b0 * gamma * gamma - params.b1 * gamma * delta +
                 params.b2 * delta * delta);
    const double g = to_double(gamma), d = to_double(delta);
    double lo = g * params.support_l + d;
    double hi = g * params.support_u + d;
    if (g < 0) std::swap(lo, hi);
    out.support_l = lo;
    out.support_u = hi;
    out.validate();
    return out;
}

}  // namespace pearsonchaos

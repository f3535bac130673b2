// SPDX-License-Identifier: MIT
//
// The six Pearson diffusion classes. A PearsonParams value holds the
// diffusion data (theta, m, b) exactly; support endpoints are numeric
// (roots of b may be irrational). Moments, classification, normalized
// densities/cdfs, sampling and linear-transform closure.
#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "pearsonchaos/poly.hpp"
#include "pearsonchaos/rng.hpp"
#include "pearsonchaos/sample_batch.hpp"

namespace pearsonchaos {

struct PearsonParams {
    Rat theta = Rat(1);  // mean-reversion speed, > 0
    Rat m = Rat(0);      // stationary mean
    Rat b0 = Rat(0), b1 = Rat(0), b2 = Rat(0);
    double support_l = -std::numeric_limits<double>::infinity();
    double support_u = std::numeric_limits<double>::infinity();

    /// b(x) = b2 x^2 + b1 x + b0
    Poly b() const;
    bool in_support(double x) const { return x > support_l && x < support_u; }

    /// Derives the natural support (the maximal interval around m on which
    /// b > 0, bounded by roots of b) and validates.
    static PearsonParams with_natural_support(Rat theta, Rat m, Rat b0, Rat b1, Rat b2);

    /// Throws ClassError when theta <= 0, b(m) <= 0, m outside the support,
    /// or a finite endpoint is not a root of b.
    void validate() const;
};

enum class PearsonFamily { Gaussian, Gamma, Beta, SkewT, InverseGamma, F };
const char* family_name(PearsonFamily f);

struct GaussianLaw {
    double mean, sigma2;
};
struct GammaLaw {
    double alpha, beta;
};
struct BetaLaw {
    double alpha, beta;
};
// p(y) ~ (1 + z^2)^{-shape} exp(-nu * atan(z)), z = (y - lambda)/scale
struct SkewTLaw {
    double shape, nu, lambda, scale;
};
struct InverseGammaLaw {
    double alpha, beta;
};
struct FLaw {
    double d1, d2;
};

/// X = scale * Y + shift maps the canonical law Y onto the given params.
struct AffineMap {
    double scale = 1.0, shift = 0.0;
};

struct PearsonClass {
    PearsonFamily family;
    std::variant<GaussianLaw, GammaLaw, BetaLaw, SkewTLaw, InverseGammaLaw, FLaw> law;
    AffineMap map;
};

/// Matches the b(x) pattern (b2 sign, discriminant, root layout vs support)
/// and recovers the natural parameters; throws ClassError when b is not
/// positive on the declared support or no class fits.
PearsonClass classify(const PearsonParams& params);

// Exact canonical-position constructors (theta defaults to 1).
PearsonParams gaussian_params(const Rat& m, const Rat& sigma2, const Rat& theta = Rat(1));
PearsonParams gamma_params(const Rat& alpha, const Rat& beta, const Rat& theta = Rat(1));
PearsonParams beta_params(const Rat& alpha, const Rat& beta, const Rat& theta = Rat(1));
PearsonParams skewt_params(const Rat& shape, const Rat& nu, const Rat& lambda, const Rat& scale,
                           const Rat& theta = Rat(1));
PearsonParams invgamma_params(const Rat& alpha, const Rat& beta, const Rat& theta = Rat(1));
PearsonParams f_params(const Rat& d1, const Rat& d2, const Rat& theta = Rat(1));
/// Student-t with tau degrees of freedom (skew-t with lambda = nu = 0).
PearsonParams student_params(const Rat& tau, const Rat& theta = Rat(1));

/// Largest p with p < 1 + 1/b2; nullopt means all moments exist (b2 <= 0).
std::optional<long> max_moment_order(const PearsonParams& params);

/// [m_0 .. m_pmax], exact, via the Stein recursion
/// m_{p+2} = ((b1(p+1)+m) m_{p+1} + (p+1) b0 m_p) / (1 - b2(p+1)).
std::vector<Rat> moments(const PearsonParams& params, int pmax);

/// Normalized density/cdf/sampler with the normalization constant computed
/// once at construction (closed forms; quadrature for the skew-t family).
/// Immutable after construction, safe to share across threads; samplers take
/// the caller's stream, so there is no shared RNG state.
class Distribution {
public:
    explicit Distribution(PearsonParams params);

    const PearsonParams& params() const { return params_; }
    const PearsonClass& pearson_class() const { return class_; }

    double density(double x) const;
    double log_density(double x) const;  // -inf outside support
    double cdf(double x) const;
    double sample_one(CounterStream& rng) const;
    SampleBatch sample(std::uint64_t seed, long n) const;

private:
    double canonical_log_density(double y) const;
    double canonical_cdf(double y) const;
    double canonical_sample(CounterStream& rng) const;

    PearsonParams params_;
    PearsonClass class_;
    double log_norm_ = 0.0;  // canonical-law log normalization
};

double density(const PearsonParams& params, double x);
double cdf(const PearsonParams& params, double x);
SampleBatch sample(const PearsonParams& params, std::uint64_t seed, long n);

/// Law of gamma*X + delta; b2 invariant, mean becomes gamma*m + delta.
PearsonParams linear_transform(const PearsonParams& params, const Rat& gamma, const Rat& delta);

}  // namespace pearsonchaos

// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pearsonchaos/pearson.hpp"
#include "pearsonchaos/verify.hpp"

using namespace pearsonchaos;

namespace {

double ks_statistic(const std::vector<double>& samples, const Distribution& dist) {
    std::vector<double> s = samples;
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = dist.cdf(s[i]);
        d = std::max(d, std::max(std::abs(f - static_cast<double>(i) / n),
                                 std::abs(static_cast<double>(i + 1) / n - f)));
    }
    return d;
}

}  // namespace

TEST_CASE("classification recovers the six classes") {
    {
        const auto cls = classify(gaussian_params(rat(1, 2), Rat(4)));
        CHECK(cls.family == PearsonFamily::Gaussian);
        CHECK(std::get<GaussianLaw>(cls.law).sigma2 == doctest::Approx(4.0));
    }
    {
        // b2=0, b1=1/beta, b0=0 on (0,inf) -> Gamma with alpha = m beta
        const auto params = gamma_params(Rat(3), Rat(2));
        CHECK(params.b1 == rat(1, 2));
        CHECK(params.b0 == 0);
        const auto cls = classify(params);
        CHECK(cls.family == PearsonFamily::Gamma);
        CHECK(std::get<GammaLaw>(cls.law).alpha == doctest::Approx(3.0));
        CHECK(std::get<GammaLaw>(cls.law).beta == doctest::Approx(2.0));
    }
    {
        // b2 = 1/(alpha-1) double root at 0 -> InverseGamma with beta = m(alpha-1)
        const auto params = invgamma_params(Rat(5), Rat(2));
        CHECK(params.b2 == rat(1, 4));
        const auto cls = classify(params);
        CHECK(cls.family == PearsonFamily::InverseGamma);
        CHECK(std::get<InverseGammaLaw>(cls.law).alpha == doctest::Approx(5.0));
        CHECK(std::get<InverseGammaLaw>(cls.law).beta == doctest::Approx(2.0));
    }
    {
        const auto cls = classify(beta_params(Rat(2), Rat(3)));
        CHECK(cls.family == PearsonFamily::Beta);
        CHECK(std::get<BetaLaw>(cls.law).alpha == doctest::Approx(2.0));
        CHECK(std::get<BetaLaw>(cls.law).beta == doctest::Approx(3.0));
    }
    {
        const auto cls = classify(f_params(Rat(6), Rat(14)));
        CHECK(cls.family == PearsonFamily::F);
        CHECK(std::get<FLaw>(cls.law).d1 == doctest::Approx(6.0));
        CHECK(std::get<FLaw>(cls.law).d2 == doctest::Approx(14.0));
    }
    {
        const auto cls = classify(skewt_params(Rat(4), Rat(2), Rat(1), Rat(3)));
        CHECK(cls.family == PearsonFamily::SkewT);
        CHECK(std::get<SkewTLaw>(cls.law).shape == doctest::Approx(4.0));
        CHECK(std::get<SkewTLaw>(cls.law).nu == doctest::Approx(2.0));
        CHECK(std::get<SkewTLaw>(cls.law).lambda == doctest::Approx(1.0));
        CHECK(std::get<SkewTLaw>(cls.law).scale == doctest::Approx(3.0));
    }
    // b not positive on the declared support
    PearsonParams bad;
    bad.theta = Rat(1);
    bad.m = Rat(0);
    bad.b0 = Rat(-1);
    CHECK_THROWS_AS(classify(bad), ClassError);
}

TEST_CASE("moment existence threshold") {
    CHECK(!max_moment_order(gaussian_params(Rat(0), Rat(1))));
    const PearsonParams third =
        PearsonParams::with_natural_support(Rat(1), Rat(2), Rat(0), Rat(0), rat(1, 3));
    CHECK(max_moment_order(third) == 3);
    CHECK(max_moment_order(student_params(Rat(9))) == 8);
}

TEST_CASE("moment recursion, exact") {
    const auto gauss = moments(gaussian_params(Rat(0), Rat(1)), 4);
    CHECK(gauss == std::vector<Rat>{Rat(1), Rat(0), Rat(1), Rat(0), Rat(3)});

    const auto gamma = moments(gamma_params(rat(7, 2), rat(5, 3)), 2);
    CHECK(gamma[2] == Rat(rat(7, 2) * rat(9, 2) / rat(25, 9)));  // alpha(alpha+1)/beta^2

    const auto student = moments(student_params(Rat(9)), 4);
    CHECK(student[2] == rat(9, 7));
    CHECK(student[4] == rat(243, 35));  // 3 tau^2 / ((tau-2)(tau-4))

    CHECK_THROWS_AS(moments(student_params(Rat(3)), 4), MomentError);
}

TEST_CASE("densities") {
    const Distribution gauss(gaussian_params(Rat(0), Rat(1)));
    CHECK(gauss.density(0.0) == doctest::Approx(0.3989422804).epsilon(1e-9));

    const Distribution beta(beta_params(Rat(2), Rat(2)));
    CHECK(beta.density(0.5) == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(beta.density(1.5) == 0.0);
    CHECK(beta.density(-0.1) == 0.0);
}

TEST_CASE("density normalization and the Pearson ODE across the classes") {
    const std::vector<PearsonParams> instances = {
        gaussian_params(rat(1, 2), Rat(2)),     gamma_params(Rat(3), rat(3, 2)),
        beta_params(rat(5, 2), Rat(2)),         skewt_params(Rat(4), Rat(1), rat(-1, 2), Rat(1)),
        invgamma_params(Rat(6), Rat(2)),        f_params(Rat(6), Rat(14)),
    };
    for (const auto& params : instances) {
        const Distribution dist(params);
        // grid through the quantiles, away from the endpoints
        for (int i = 1; i <= 9; ++i) {
            const double q = static_cast<double>(i) / 10.0;
            double lo = std::isfinite(params.support_l) ? params.support_l
                                                        : to_double(params.m) - 60.0;
            double hi = std::isfinite(params.support_u) ? params.support_u
                                                        : to_double(params.m) + 60.0;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (dist.cdf(mid) < q ? lo : hi) = mid;
            }
            const double x = 0.5 * (lo + hi);
            const double p = dist.density(x);
            const double h = 1e-6 * (1.0 + std::abs(x));
            const double dp = (dist.density(x + h) - dist.density(x - h)) / (2.0 * h);
            const double bx = params.b().eval(x);
            const double drift = (2.0 * to_double(params.b2) + 1.0) * x - to_double(params.m) +
                                 to_double(params.b1);
            CHECK(std::abs(dp + drift / bx * p) <= 2e-6 * p + 1e-12);
        }
        // cdf endpoints
        if (std::isfinite(params.support_l)) CHECK(dist.cdf(params.support_l) == 0.0);
        if (std::isfinite(params.support_u)) CHECK(dist.cdf(params.support_u) == 1.0);
    }
}

TEST_CASE("cdf closed forms") {
    const Distribution gauss(gaussian_params(Rat(0), Rat(1)));
    CHECK(gauss.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));

    const Distribution expo(gamma_params(Rat(1), Rat(1)));
    CHECK(expo.cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-9));
    CHECK(expo.cdf(0.0) == 0.0);
}

TEST_CASE("sampling: law of large numbers and determinism") {
    const Distribution gauss(gaussian_params(Rat(0), Rat(1)));
    const auto batch = gauss.sample(42, 1000000);
    double mean = 0.0;
    for (double v : batch.values) mean += v;
    mean /= static_cast<double>(batch.values.size());
    CHECK(std::abs(mean) <= 0.004);  // 3 sigma band plus slack

    const auto again = gauss.sample(42, 1000000);
    CHECK(batch.values == again.values);

    // Student-t(9): E[X^2] = 9/7 within 3 standard errors
    const Distribution student(student_params(Rat(9)));
    const auto tb = student.sample(7, 1000000);
    double s2 = 0.0, s4 = 0.0;
    for (double v : tb.values) {
        s2 += v * v;
        s4 += v * v * v * v;
    }
    const double n = static_cast<double>(tb.values.size());
    const double m2_hat = s2 / n;
    const double se = std::sqrt((s4 / n - m2_hat * m2_hat) / n);
    CHECK(std::abs(m2_hat - 9.0 / 7.0) <= 3.0 * se);
}

TEST_CASE("one-sample Kolmogorov-Smirnov against cdf()") {
    // 0.999 quantile of the Kolmogorov law ~ 1.9495/sqrt(n)
    {
        const Distribution gauss(gaussian_params(Rat(0), Rat(1)));
        const double threshold = 1.9495 / std::sqrt(100000.0);
        int ok = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed)
            if (ks_statistic(gauss.sample(seed, 100000).values, gauss) < threshold) ++ok;
        CHECK(ok >= 99);
    }
    const std::vector<PearsonParams> others = {
        gamma_params(Rat(3), rat(3, 2)), beta_params(Rat(2), Rat(3)),
        invgamma_params(Rat(6), Rat(2)), f_params(Rat(6), Rat(14))};
    for (const auto& params : others) {
        const Distribution dist(params);
        CHECK(ks_statistic(dist.sample(11, 20000).values, dist) < 1.9495 / std::sqrt(20000.0));
    }
    const Distribution skewt(skewt_params(Rat(4), Rat(1), Rat(0), Rat(1)));
    CHECK(ks_statistic(skewt.sample(11, 1000).values, skewt) < 1.9495 / std::sqrt(1000.0));
}

TEST_CASE("linear transform closure") {
    const auto base = gaussian_params(Rat(0), Rat(1));
    const auto same = linear_transform(base, Rat(1), Rat(0));
    CHECK(same.m == base.m);
    CHECK(same.b0 == base.b0);

    const auto moved = linear_transform(base, Rat(2), Rat(3));
    CHECK(moved.m == Rat(3));
    CHECK(moved.b0 == Rat(4));
    CHECK(classify(moved).family == PearsonFamily::Gaussian);

    CHECK_THROWS_AS(linear_transform(base, Rat(0), Rat(1)), ClassError);

    CounterStream rng(3, 1);
    for (int t = 0; t < 30; ++t) {
        const PearsonParams p = random_fourmoment_params(rng);
        const Rat gamma = rat(1 + static_cast<long>(rng.next_u64() % 5),
                              1 + static_cast<long>(rng.next_u64() % 3));
        const Rat delta = rat(static_cast<long>(rng.next_u64() % 9) - 4, 2);
        const auto q = linear_transform(p, gamma, delta);
        CHECK(q.b2 == p.b2);  // b2 invariant
        CHECK(q.m == Rat(gamma * p.m + delta));

        // binomial transform of the moments, exact
        const auto mp = moments(p, 4);
        const auto mq = moments(q, 4);
        for (unsigned j = 0; j <= 4; ++j) {
            Rat acc(0);
            for (unsigned i = 0; i <= j; ++i)
                acc = Rat(acc + rat_binom(j, i) * rat_pow(gamma, i) * rat_pow(delta, j - i) * mp[i]);
            CHECK(mq[j] == acc);
        }
    }
}

TEST_CASE("mirrored laws: classification and cdf under gamma < 0") {
    // reflected Gamma lives on (-inf, 0)
    const auto mirrored = linear_transform(gamma_params(Rat(3), Rat(2)), Rat(-1), Rat(0));
    CHECK(mirrored.support_u == doctest::Approx(0.0));
    const auto cls = classify(mirrored);
    CHECK(cls.family == PearsonFamily::Gamma);
    CHECK(std::get<GammaLaw>(cls.law).alpha == doctest::Approx(3.0));
    const Distribution dist(mirrored);
    CHECK(dist.cdf(0.0) == 1.0);
    CHECK(dist.cdf(-1.5) + Distribution(gamma_params(Rat(3), Rat(2))).cdf(1.5) ==
          doctest::Approx(1.0).epsilon(1e-10));
    const auto batch = dist.sample(2, 5000);
    for (double v : batch.values) CHECK(v < 0.0);

    // reflected inverse-gamma keeps its class as well
    const auto ig = linear_transform(invgamma_params(Rat(6), Rat(2)), Rat(-2), Rat(1));
    CHECK(classify(ig).family == PearsonFamily::InverseGamma);
    CHECK(std::get<InverseGammaLaw>(classify(ig).law).alpha == doctest::Approx(6.0));
}

TEST_CASE("skew-t mean is consistent with the density (quadrature cross-check)") {
    // mean = lambda - scale*nu/(2(shape-1)), validated against direct
    // quadrature of the density rather than taken on faith.
    const auto params = skewt_params(rat(27, 10), rat(13, 10), rat(2, 5), rat(11, 10));
    const Distribution dist(params);
    // E[X] via integration by parts on the cdf: mean = int x p dx
    double acc = 0.0;
    const int n = 4000;
    const double lo = -40.0, hi = 40.0;
    const double h = (hi - lo) / n;
    for (int i = 0; i < n; ++i) {
        const double x = lo + (i + 0.5) * h;
        acc += x * dist.density(x) * h;
    }
    CHECK(acc == doctest::Approx(to_double(params.m)).epsilon(1e-5));
}

// SPDX-License-Identifier: MIT
#include "pearsonchaos/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "pearsonchaos/errors.hpp"

namespace pearsonchaos {

SampleBatch euler_maruyama(const PearsonParams& params, double x0, double dt, long steps,
                           std::uint64_t seed) {
    params.validate();
    if (!(dt > 0) || to_double(params.theta) * dt >= 0.5)
        throw Error("euler_maruyama requires dt > 0 and dt*theta < 1/2");
    if (!params.in_support(x0)) throw Error("x0 must lie in the open support");
    if (steps < 1) throw Error("steps must be >= 1");

    const double theta = to_double(params.theta);
    const double m = to_double(params.m);
    const Poly b = params.b();
    const double eps = 1e-12;
    const long burn_in =
        std::max<long>(static_cast<long>(std::ceil(10.0 / (theta * dt))), 10000);

    SampleBatch batch;
    batch.seed = seed;
    {
        std::ostringstream prov;
        prov << "sde(dt=" << dt << ",steps=" << steps << ",burnin=" << burn_in << ")";
        batch.provenance = prov.str();
    }
    batch.values.reserve(static_cast<std::size_t>(steps));

    CounterStream rng(seed, compose_stream(1, 0));
    double x = x0;
    for (long i = 0; i < burn_in + steps; ++i) {
        double bx = b.eval(x);
        if (bx < 0) throw Error("b(x) < 0 encountered during SDE simulation");
        x += -theta * (x - m) * dt + std::sqrt(2.0 * theta * bx * dt) * rng.normal();
        if (std::isfinite(params.support_l) && x < params.support_l + eps)
            x = params.support_l + eps;
        if (std::isfinite(params.support_u) && x > params.support_u - eps)
            x = params.support_u - eps;
        if (i >= burn_in) batch.values.push_back(x);
    }
    return batch;
}

double kolmogorov_distance(const SampleBatch& samples, const Distribution& target) {
    if (samples.values.empty()) throw Error("kolmogorov_distance needs samples");
    std::vector<double> sorted = samples.values;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = target.cdf(sorted[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double kolmogorov_distance(const SampleBatch& a, const SampleBatch& b) {
    if (a.values.empty() || b.values.empty()) throw Error("kolmogorov_distance needs samples");
    std::vector<double> sa = a.values, sb = b.values;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
        const double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= x) ++i;
        while (j < sb.size() && sb[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / static_cast<double>(sa.size()) -
                                 static_cast<double>(j) / static_cast<double>(sb.size())));
    }
    return d;
}

double bounded_lipschitz_distance(const SampleBatch& a, const SampleBatch& b) {
    if (a.values.empty() || b.values.empty())
        throw Error("bounded_lipschitz_distance needs nonempty batches");
    std::vector<double> pooled = a.values;
    pooled.insert(pooled.end(), b.values.begin(), b.values.end());
    std::sort(pooled.begin(), pooled.end());

    constexpr int kNodes = 33;
    std::vector<double> nodes(kNodes);
    for (int i = 0; i < kNodes; ++i) {
        const std::size_t idx = static_cast<std::size_t>(
            (pooled.size() - 1) * static_cast<double>(i) / (kNodes - 1));
        nodes[static_cast<std::size_t>(i)] = pooled[idx];
    }
    const double span = std::max(pooled.back() - pooled.front(), 1e-12);
    const double hat_width = span / 8.0;

    auto mean_of = [](const std::vector<double>& xs, auto&& f) {
        double acc = 0.0;
        for (double x : xs) acc += f(x);
        return acc / static_cast<double>(xs.size());
    };

    double best = 0.0;
    for (double t : nodes) {
        auto ramp = [t](double x) { return std::clamp(x - t, -1.0, 1.0); };
        best = std::max(best, std::abs(mean_of(a.values, ramp) - mean_of(b.values, ramp)));
        auto hat = [t, hat_width](double x) {
            return std::min(1.0, std::max(0.0, hat_width - std::abs(x - t)));
        };
        best = std::max(best, std::abs(mean_of(a.values, hat) - mean_of(b.values, hat)));
    }
    return best;
}

SampleBatch chaos_sample(const ChaosElement& elem, std::uint64_t seed, long n) {
    if (n < 1) throw Error("sample size must be >= 1");
    const int dim = elem.gen.dim();

    // sparse term view for fast evaluation
    struct CompactTerm {
        double coeff;
        std::vector<std::pair<int, unsigned>> exponents;
    };
    std::vector<CompactTerm> compact;
    compact.reserve(elem.F.term_count());
    std::vector<bool> active(static_cast<std::size_t>(dim), false);
    for (const auto& [alpha, c] : elem.F.terms()) {
        CompactTerm t;
        t.coeff = to_double(c);
        for (int i = 0; i < dim; ++i) {
            const unsigned e = alpha[static_cast<std::size_t>(i)];
            if (e == 0) continue;
            t.exponents.emplace_back(i, e);
            active[static_cast<std::size_t>(i)] = true;
        }
        compact.push_back(std::move(t));
    }

    // one Distribution per distinct coordinate law
    std::vector<int> law_of(static_cast<std::size_t>(dim), -1);
    std::vector<Distribution> laws;
    for (int i = 0; i < dim; ++i) {
        if (!active[static_cast<std::size_t>(i)]) continue;
        const auto& pi = elem.gen.coords[static_cast<std::size_t>(i)].params;
        for (std::size_t l = 0; l < laws.size(); ++l) {
            const auto& pl = laws[l].params();
            if (pl.theta == pi.theta && pl.m == pi.m && pl.b0 == pi.b0 && pl.b1 == pi.b1 &&
                pl.b2 == pi.b2 && pl.support_l == pi.support_l && pl.support_u == pi.support_u) {
                law_of[static_cast<std::size_t>(i)] = static_cast<int>(l);
                break;
            }
        }
        if (law_of[static_cast<std::size_t>(i)] < 0) {
            laws.emplace_back(pi);
            law_of[static_cast<std::size_t>(i)] = static_cast<int>(laws.size()) - 1;
        }
    }

    const double shift = to_double(elem.shift);
    SampleBatch batch;
    batch.seed = seed;
    {
        std::ostringstream prov;
        prov << "chaos-eval(dim=" << dim << ",terms=" << elem.terms.size() << ")";
        batch.provenance = prov.str();
    }
    batch.values.resize(static_cast<std::size_t>(n));
    std::vector<double> point(static_cast<std::size_t>(dim), 0.0);
    for (long draw = 0; draw < n; ++draw) {
        for (int i = 0; i < dim; ++i) {
            if (!active[static_cast<std::size_t>(i)]) continue;
            CounterStream rng(seed, compose_stream(static_cast<std::uint64_t>(i) + 2,
                                                   static_cast<std::uint64_t>(draw)));
            point[static_cast<std::size_t>(i)] =
                laws[static_cast<std::size_t>(law_of[static_cast<std::size_t>(i)])].sample_one(rng);
        }
        double acc = shift;
        for (const auto& t : compact) {
            double v = t.coeff;
            for (const auto& [i, e] : t.exponents) {
                const double x = point[static_cast<std::size_t>(i)];
                double px = x;
                for (unsigned r = 1; r < e; ++r) px *= x;
                v *= px;
            }
            acc += v;
        }
        batch.values[static_cast<std::size_t>(draw)] = acc;
    }
    return batch;
}

void ExperimentDescriptor::validate() const {
    if (k_grid.empty()) return;  // empty grid -> empty table
    for (std::size_t i = 1; i < k_grid.size(); ++i)
        if (k_grid[i] <= k_grid[i - 1]) throw IoError("k_grid must be strictly increasing");
    if (mc_n < 1000) throw IoError("mc_n must be >= 1000");
}

const char* family_name(ChaosFamily family) {
    switch (family) {
        case ChaosFamily::MatchingPairs: return "matching_pairs";
        case ChaosFamily::CompleteGraph: return "complete_graph";
        case ChaosFamily::SelfFirstChaos: return "self_first_chaos";
    }
    return "?";
}

std::optional<ChaosFamily> family_from_name(const std::string& name) {
    if (name == "matching_pairs") return ChaosFamily::MatchingPairs;
    if (name == "complete_graph") return ChaosFamily::CompleteGraph;
    if (name == "self_first_chaos") return ChaosFamily::SelfFirstChaos;
    return std::nullopt;
}

namespace {

struct FamilyCell {
    std::array<Rat, 5> central;  // exact E[F~^r], r = 0..4, raw element
    Rat eta;
    std::vector<double> samples;  // raw element draws (unnormalized, unshifted)
};

std::array<Rat, 5> to_array5(const std::vector<Rat>& v) {
    std::array<Rat, 5> a;
    for (std::size_t i = 0; i < 5; ++i) a[i] = v[i];
    return a;
}

// Equal-coefficient degree-2 sums over the complete graph with standard
// Gaussian coordinates: F~ = sum_{i != j} x_i x_j = S^2 - sum x_i^2.
// Cumulants: kappa_r = 2^{r-1}(r-1)! tr(A^r), A = J - I,
// tr(A^r) = (k-1)^r + (k-1)(-1)^r.
std::array<Rat, 5> complete_graph_central(long k) {
    auto tr = [k](unsigned r) {
        return Rat(rat_pow(Rat(k - 1), r) + Rat(k - 1) * (r % 2 == 0 ? 1 : -1));
    };
    const Rat kappa2 = Rat(2 * tr(2));
    const Rat kappa3 = Rat(8 * tr(3));
    const Rat kappa4 = Rat(48 * tr(4));
    return {Rat(1), Rat(0), kappa2, kappa3, Rat(kappa4 + 3 * kappa2 * kappa2)};
}

FamilyCell build_cell(const ExperimentDescriptor& d, const Distribution& target, long k,
                      std::uint64_t row_seed) {
    FamilyCell cell;
    switch (d.family) {
        case ChaosFamily::MatchingPairs: {
            if (k < 2 || k % 2 != 0)
                throw IoError("matching_pairs requires even k >= 2");
            GeneratorHandle base = make_generator(target.params());
            std::map<std::vector<int>, Rat> coeffs;
            for (long i = 0; i + 1 < k; i += 2)
                coeffs.emplace(std::vector<int>{static_cast<int>(i), static_cast<int>(i + 1)},
                               rat(1, 2));  // p! * 1/2 = 1 per pair
            ChaosElement elem = homogeneous_sum(base, static_cast<int>(k), 2, coeffs);
            cell.central = to_array5(element_moments(elem, 4));
            cell.eta = elem.grade;
            cell.samples = chaos_sample(elem, row_seed, d.mc_n).values;
            break;
        }
        case ChaosFamily::CompleteGraph: {
            const auto& p = target.params();
            if (k < 2) throw IoError("complete_graph requires k >= 2");
            cell.central = complete_graph_central(k);
            cell.eta = Rat(2);  // Gaussian coordinates
            cell.samples.resize(static_cast<std::size_t>(d.mc_n));
            for (long draw = 0; draw < d.mc_n; ++draw) {
                double s = 0.0, t = 0.0;
                for (long i = 0; i < k; ++i) {
                    CounterStream rng(row_seed,
                                      compose_stream(static_cast<std::uint64_t>(i) + 2,
                                                     static_cast<std::uint64_t>(draw)));
                    const double x = rng.normal();
                    s += x;
                    t += x * x;
                }
                cell.samples[static_cast<std::size_t>(draw)] = s * s - t;
            }
            (void)p;
            break;
        }
        case ChaosFamily::SelfFirstChaos: {
            GeneratorHandle base = make_generator(target.params());
            // F = P_1 = x - m; G = F + m has the target law itself
            const auto mom = moments(target.params(), 4);
            std::vector<Rat> central(5, Rat(0));
            central[0] = Rat(1);
            // central moments of x - m from raw moments
            for (int r = 1; r <= 4; ++r) {
                Rat acc(0);
                for (int i = 0; i <= r; ++i) {
                    const Rat term =
                        Rat(rat_binom(static_cast<unsigned>(r), static_cast<unsigned>(i)) *
                            mom[static_cast<std::size_t>(i)] *
                            rat_pow(Rat(-target.params().m), static_cast<unsigned>(r - i)));
                    acc = Rat(acc + term);
                }
                central[static_cast<std::size_t>(r)] = acc;
            }
            cell.central = to_array5(central);
            cell.eta = chaos_grade(base, 1);
            auto batch = target.sample(row_seed, d.mc_n);
            cell.samples = std::move(batch.values);
            for (double& x : cell.samples) x -= to_double(target.params().m);
            break;
        }
    }
    return cell;
}

}  // namespace

std::vector<ConvergenceRow> run_convergence(const ExperimentDescriptor& d) {
    d.validate();
    std::vector<ConvergenceRow> rows;
    if (d.k_grid.empty()) return rows;

    const Distribution target(d.target);
    const TargetSpec spec = make_target(d.target);
    const Rat eta_tilde = Rat(2 * (1 - spec.params.b2));
    const double m_target = to_double(spec.params.m);

    auto compute_row = [&](long k) -> ConvergenceRow {
        const std::uint64_t row_seed = detail::splitmix64(d.seed ^ static_cast<std::uint64_t>(k));
        FamilyCell cell = build_cell(d, target, k, row_seed);

        ConvergenceRow row;
        row.k = k;
        row.eta = cell.eta;
        row.xi = cell.eta > eta_tilde ? Rat(cell.eta - eta_tilde) : Rat(0);

        const Rat var = cell.central[2];
        if (var <= 0) throw Error("chaos element has nonpositive variance");
        // scale the element so its variance matches the target's central
        // variance (the self-chaos case is a no-op)
        const auto target_mom = moments(spec.params, 2);
        const Rat target_var = Rat(target_mom[2] - spec.params.m * spec.params.m);
        const Rat ratio = Rat(target_var / var);  // squared scale factor
        const bool odd_zero = cell.central[1] == 0 && cell.central[3] == 0;
        // symmetric targets (m = 0, b1 = 0) have c1 = c3 = d1 = d3 = 0, so
        // odd moments never enter the combinations
        const bool odd_unused = spec.params.m == 0 && spec.params.b1 == 0;
        Rat scale_exact;
        const bool sq = rat_sqrt_exact(ratio, scale_exact);

        double U_val, Q2_val;
        if (odd_zero || sq || odd_unused) {
            // exact moments of the scaled element
            std::vector<Rat> norm(5, Rat(0));
            norm[0] = Rat(1);
            norm[2] = target_var;
            norm[4] = Rat(cell.central[4] * ratio * ratio);
            if (sq && !odd_zero) {
                norm[1] = Rat(cell.central[1] * scale_exact);
                norm[3] = Rat(cell.central[3] * ratio * scale_exact);
            }
            // odd_unused: the odd entries are multiplied by zero coefficients,
            // any placeholder value is fine; zero keeps the report honest
            const auto mg = shifted_moments(norm, spec.params.m);
            const auto [u, q2] = moment_combination(spec, {mg[1], mg[2], mg[3], mg[4]});
            row.U_exact = u;
            row.Q2_exact = q2;
            row.exact_values = true;
            U_val = to_double(u);
            Q2_val = to_double(q2);
        } else {
            const double scale = std::sqrt(to_double(ratio));
            std::array<Rat, 4> mg_f;
            for (int j = 1; j <= 4; ++j) {
                double acc = 0.0;
                for (int i = 0; i <= j; ++i)
                    acc += to_double(rat_binom(static_cast<unsigned>(j), static_cast<unsigned>(i))) *
                           to_double(cell.central[static_cast<std::size_t>(i)]) *
                           std::pow(scale, i) * std::pow(m_target, j - i);
                mg_f[static_cast<std::size_t>(j - 1)] = rat_from_double(acc);
            }
            const auto [u, q2] = moment_combination(spec, mg_f);
            row.exact_values = false;
            U_val = to_double(u);
            Q2_val = to_double(q2);
        }
        row.U_value = U_val;
        row.Q2_value = Q2_val;

        // squared four-moment bound with xi clamped at zero
        const double low = 2.0 * (1.0 - to_double(spec.params.b2) - to_double(cell.eta) / 4.0);
        const double rhs_sq =
            low * U_val + to_double(row.xi) * (1.0 - to_double(spec.params.b2)) / 2.0 * Q2_val;
        row.bound = rhs_sq >= 0 ? std::sqrt(rhs_sq) : std::nan("");

        // empirical side: rescale, shift, measure
        const double scale = std::sqrt(to_double(ratio));
        SampleBatch g_batch;
        g_batch.seed = row_seed;
        g_batch.provenance = "chaos-eval(normalized)";
        g_batch.values.reserve(cell.samples.size());
        for (double v : cell.samples) g_batch.values.push_back(v * scale + m_target);
        double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
        for (double v : g_batch.values) {
            s1 += v;
            s2 += v * v;
            s3 += v * v * v;
            s4 += v * v * v * v;
        }
        const double n = static_cast<double>(g_batch.values.size());
        row.m1 = s1 / n;
        row.m2 = s2 / n;
        row.m3 = s3 / n;
        row.m4 = s4 / n;
        row.kolmogorov = kolmogorov_distance(g_batch, target);
        return row;
    };

    // cells run concurrently; counter-keyed streams keep every row bitwise
    // reproducible, and joining in grid order keeps the table deterministic
    std::vector<std::future<ConvergenceRow>> futures;
    futures.reserve(d.k_grid.size());
    for (long k : d.k_grid)
        futures.push_back(std::async(std::launch::async, compute_row, k));
    rows.reserve(futures.size());
    for (auto& f : futures) rows.push_back(f.get());
    return rows;
}

}  // namespace pearsonchaos

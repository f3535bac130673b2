// SPDX-License-Identifier: MIT
#include "pearsonchaos/tensor.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "pearsonchaos/errors.hpp"

namespace pearsonchaos {

namespace {

void check_dim(const TensorGenerator& gen, const MPoly& f) {
    if (gen.dim() != f.dim()) throw DimensionMismatch("tensor generator and MPoly dimension differ");
}

// product basis element prod_i bases[i][alpha_i]
MPoly basis_product(const std::vector<std::vector<Poly>>& bases, const MultiIndex& alpha, int dim) {
    MPoly out(dim, Rat(1));
    for (int i = 0; i < dim; ++i) {
        const unsigned d = alpha[static_cast<std::size_t>(i)];
        if (d == 0) continue;
        out = out * MPoly::from_univariate(bases[static_cast<std::size_t>(i)][d], dim, i);
    }
    return out;
}

std::vector<std::vector<Poly>> coordinate_bases(const TensorGenerator& gen, const MPoly& f) {
    std::vector<std::vector<Poly>> bases(static_cast<std::size_t>(gen.dim()));
    for (int i = 0; i < gen.dim(); ++i) {
        const int d = f.degree_in(i);
        bases[static_cast<std::size_t>(i)] = orthopoly_basis(gen.coords[static_cast<std::size_t>(i)], d);
    }
    return bases;
}

}  // namespace

TensorGenerator tensorize(std::vector<GeneratorHandle> coords) {
    if (coords.empty()) throw DimensionMismatch("tensor generator needs at least one coordinate");
    return TensorGenerator{std::move(coords)};
}

TensorGenerator iid_tensor(const GeneratorHandle& base, int n) {
    if (n < 1) throw DimensionMismatch("tensor generator needs at least one coordinate");
    return TensorGenerator{std::vector<GeneratorHandle>(static_cast<std::size_t>(n), base)};
}

MPoly apply_LN(const TensorGenerator& gen, const MPoly& f) {
    check_dim(gen, f);
    const int n = gen.dim();
    MPoly out(n);
    for (int i = 0; i < n; ++i) {
        const auto& g = gen.coords[static_cast<std::size_t>(i)];
        const MPoly d1 = f.partial(i);
        if (d1.is_zero()) continue;
        const MPoly drift = MPoly::from_univariate(Poly({Rat(-g.params.m), Rat(1)}), n, i);
        const MPoly diff = MPoly::from_univariate(g.params.b(), n, i);
        out = out + (diff * d1.partial(i) - drift * d1).scaled(g.theta);
    }
    return out;
}

MPoly gamma_N(const TensorGenerator& gen, const MPoly& f, const MPoly& g) {
    check_dim(gen, f);
    check_dim(gen, g);
    const int n = gen.dim();
    MPoly out(n);
    for (int i = 0; i < n; ++i) {
        const auto& h = gen.coords[static_cast<std::size_t>(i)];
        const MPoly df = f.partial(i);
        if (df.is_zero()) continue;
        const MPoly dg = g.partial(i);
        if (dg.is_zero()) continue;
        const MPoly diff = MPoly::from_univariate(h.params.b(), n, i);
        out = out + (diff * df * dg).scaled(h.theta);
    }
    const MPoly fg = f * g;
    const MPoly by_def =
        (apply_LN(gen, fg) - f * apply_LN(gen, g) - g * apply_LN(gen, f)).scaled(rat(1, 2));
    if (!(out == by_def))
        throw Error("tensor carre du champ cross-check failed (definition vs diffusion form)");
    return out;
}

Rat integrate_N(const TensorGenerator& gen, const MPoly& f) {
    check_dim(gen, f);
    const int n = gen.dim();
    std::vector<std::vector<Rat>> mom(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        mom[static_cast<std::size_t>(i)] =
            moments(gen.coords[static_cast<std::size_t>(i)].params, f.degree_in(i));
    Rat acc(0);
    for (const auto& [alpha, c] : f.terms()) {
        Rat t = c;
        for (std::size_t i = 0; i < alpha.size(); ++i)
            if (alpha[i] > 0) t = Rat(t * mom[i][alpha[i]]);
        acc = Rat(acc + t);
    }
    return acc;
}

std::map<MultiIndex, Rat> eigen_expand(const TensorGenerator& gen, const MPoly& f) {
    check_dim(gen, f);
    const auto bases = coordinate_bases(gen, f);
    std::map<MultiIndex, Rat> comps;
    MPoly rest = f;
    while (!rest.is_zero()) {
        // lexicographically largest monomial; the matching monic basis
        // product has it as its leading monomial with coefficient 1
        const auto top = std::prev(rest.terms().end());
        const MultiIndex alpha = top->first;
        const Rat c = top->second;
        comps.emplace(alpha, c);
        rest = rest - basis_product(bases, alpha, gen.dim()).scaled(c);
    }
    return comps;
}

MPoly l_inverse_N(const TensorGenerator& gen, const MPoly& f) {
    check_dim(gen, f);
    if (f.is_zero()) return MPoly(gen.dim());
    std::vector<std::vector<Poly>> bases;
    std::map<MultiIndex, Rat> comps;
    try {
        bases = coordinate_bases(gen, f);
        comps = eigen_expand(gen, f);
    } catch (const MomentError&) {
        throw SpectrumError("outside the domain of L_N^-1: product eigenbasis unavailable");
    }
    MPoly out(gen.dim());
    const MultiIndex zero(static_cast<std::size_t>(gen.dim()), 0);
    for (const auto& [alpha, c] : comps) {
        if (alpha == zero) continue;  // pi_0 component dropped
        Rat kappa(0);
        for (int i = 0; i < gen.dim(); ++i) {
            const unsigned d = alpha[static_cast<std::size_t>(i)];
            if (d == 0) continue;
            Rat lam;
            try {
                lam = eigenvalue(gen.coords[static_cast<std::size_t>(i)], static_cast<int>(d));
            } catch (const SpectrumError&) {
                throw SpectrumError("outside the domain of L_N^-1: coordinate eigenvalue missing");
            }
            kappa = Rat(kappa - lam);  // lambda magnitudes
        }
        out = out + basis_product(bases, alpha, gen.dim()).scaled(Rat(-c / kappa));
    }
    return out;
}

Rat tensor_grade_formula(const TensorGenerator& gen, const MultiIndex& alpha) {
    if (alpha.size() != static_cast<std::size_t>(gen.dim()))
        throw DimensionMismatch("multi-index length differs from generator dimension");
    Rat num(0), den(0);
    for (int i = 0; i < gen.dim(); ++i) {
        const unsigned d = alpha[static_cast<std::size_t>(i)];
        if (d == 0) continue;
        const auto& g = gen.coords[static_cast<std::size_t>(i)];
        const Rat lam = Rat(-eigenvalue(g, static_cast<int>(d)));
        num = Rat(num + lam * chaos_grade(g, static_cast<int>(d)));
        den = Rat(den + lam);
    }
    if (den == 0) throw ChaosError("zero multi-index has no chaos grade");
    return Rat(num / den);
}

namespace {

Rat class_eigenvalue_magnitude(const TensorGenerator& gen, const MultiIndex& alpha) {
    Rat kappa(0);
    for (int i = 0; i < gen.dim(); ++i) {
        const unsigned d = alpha[static_cast<std::size_t>(i)];
        if (d == 0) continue;
        kappa = Rat(kappa - eigenvalue(gen.coords[static_cast<std::size_t>(i)], static_cast<int>(d)));
    }
    return kappa;
}

// chaos grade via the exact expansion of F^2
Rat grade_by_expansion(const TensorGenerator& gen, const MPoly& f, const Rat& lambda) {
    if (f.term_count() * f.term_count() > 1'000'000)
        throw Error("chaos element too large for the F^2 eigen-expansion");
    const MPoly sq = f * f;
    const auto comps = eigen_expand(gen, sq);
    Rat kappa_max(0);
    for (const auto& [alpha, c] : comps) {
        const Rat kappa = class_eigenvalue_magnitude(gen, alpha);
        if (kappa > kappa_max) kappa_max = kappa;
    }
    return Rat(kappa_max / lambda);
}

// Pairwise envelope for 0/1-valued multi-indices: the square's components
// reach sum_{i in J cap J'} lambda_2^i + sum_{i in J sym-diff J'} lambda_1^i.
Rat grade_by_support_pairs(const TensorGenerator& gen, const std::vector<ChaosTerm>& terms,
                           const Rat& lambda) {
    std::vector<std::vector<int>> supports;
    supports.reserve(terms.size());
    for (const auto& t : terms) {
        std::vector<int> s;
        for (std::size_t i = 0; i < t.alpha.size(); ++i)
            if (t.alpha[i] == 1) s.push_back(static_cast<int>(i));
        supports.push_back(std::move(s));
    }
    std::vector<Rat> lam1(static_cast<std::size_t>(gen.dim())), lam2(static_cast<std::size_t>(gen.dim()));
    std::vector<bool> used(static_cast<std::size_t>(gen.dim()), false);
    for (const auto& s : supports)
        for (int i : s) used[static_cast<std::size_t>(i)] = true;
    for (int i = 0; i < gen.dim(); ++i) {
        if (!used[static_cast<std::size_t>(i)]) continue;
        lam1[static_cast<std::size_t>(i)] = Rat(-eigenvalue(gen.coords[static_cast<std::size_t>(i)], 1));
        lam2[static_cast<std::size_t>(i)] = Rat(-eigenvalue(gen.coords[static_cast<std::size_t>(i)], 2));
    }
    Rat kappa_max(0);
    for (std::size_t s = 0; s < supports.size(); ++s) {
        for (std::size_t t = s; t < supports.size(); ++t) {
            Rat kappa(0);
            auto it = supports[s].begin();
            auto jt = supports[t].begin();
            while (it != supports[s].end() || jt != supports[t].end()) {
                if (jt == supports[t].end() || (it != supports[s].end() && *it < *jt))
                    kappa = Rat(kappa + lam1[static_cast<std::size_t>(*it++)]);
                else if (it == supports[s].end() || *jt < *it)
                    kappa = Rat(kappa + lam1[static_cast<std::size_t>(*jt++)]);
                else {
                    kappa = Rat(kappa + lam2[static_cast<std::size_t>(*it)]);
                    ++it;
                    ++jt;
                }
            }
            if (kappa > kappa_max) kappa_max = kappa;
        }
    }
    return Rat(kappa_max / lambda);
}

}  // namespace

Rat tensor_chaos_grade(const TensorGenerator& gen, const std::vector<ChaosTerm>& terms) {
    if (terms.empty()) throw ChaosError("empty chaos element");
    for (const auto& t : terms)
        for (std::size_t i = 0; i < t.alpha.size(); ++i)
            if (t.alpha[i] >= 1 &&
                !is_chaotic(gen.coords[i], static_cast<int>(t.alpha[i])))
                throw ChaosError("not chaotic: coordinate degree fails b2 < 1/(4n-1)");
    const Rat lambda = class_eigenvalue_magnitude(gen, terms.front().alpha);
    const bool all_01 = std::all_of(terms.begin(), terms.end(), [](const ChaosTerm& t) {
        return std::all_of(t.alpha.begin(), t.alpha.end(), [](unsigned d) { return d <= 1; });
    });
    if (all_01) return grade_by_support_pairs(gen, terms, lambda);
    MPoly f(gen.dim());
    std::vector<std::vector<Poly>> bases(static_cast<std::size_t>(gen.dim()));
    for (int i = 0; i < gen.dim(); ++i) {
        int d = 0;
        for (const auto& t : terms) d = std::max(d, static_cast<int>(t.alpha[static_cast<std::size_t>(i)]));
        bases[static_cast<std::size_t>(i)] = orthopoly_basis(gen.coords[static_cast<std::size_t>(i)], d);
    }
    for (const auto& t : terms) f = f + basis_product(bases, t.alpha, gen.dim()).scaled(t.a);
    return grade_by_expansion(gen, f, lambda);
}

ChaosElement tensor_eigenfunction(const TensorGenerator& gen, std::vector<ChaosTerm> raw_terms,
                                  Rat shift) {
    if (raw_terms.empty()) throw ChaosError("empty chaos element");
    // merge duplicate multi-indices, drop zero coefficients
    std::map<MultiIndex, Rat> merged;
    for (auto& t : raw_terms) {
        if (t.alpha.size() != static_cast<std::size_t>(gen.dim()))
            throw DimensionMismatch("multi-index length differs from generator dimension");
        auto [it, inserted] = merged.emplace(t.alpha, t.a);
        if (!inserted) it->second = Rat(it->second + t.a);
    }
    std::vector<ChaosTerm> terms;
    const MultiIndex zero(static_cast<std::size_t>(gen.dim()), 0);
    for (auto& [alpha, a] : merged) {
        if (a == 0) continue;
        if (alpha == zero) throw ChaosError("the zero multi-index is not an eigenfunction term");
        terms.push_back(ChaosTerm{alpha, a});
    }
    if (terms.empty()) throw ChaosError("empty chaos element");

    const Rat lambda = class_eigenvalue_magnitude(gen, terms.front().alpha);
    for (const auto& t : terms) {
        const Rat k = class_eigenvalue_magnitude(gen, t.alpha);
        if (k != lambda) throw ChaosError("mixed eigenvalues across multi-indices");
    }

    ChaosElement elem{MPoly(gen.dim()), Rat(-lambda), tensor_chaos_grade(gen, terms), gen,
                      std::move(shift), terms};
    std::vector<std::vector<Poly>> bases(static_cast<std::size_t>(gen.dim()));
    for (int i = 0; i < gen.dim(); ++i) {
        int d = 0;
        for (const auto& t : terms) d = std::max(d, static_cast<int>(t.alpha[static_cast<std::size_t>(i)]));
        bases[static_cast<std::size_t>(i)] = orthopoly_basis(gen.coords[static_cast<std::size_t>(i)], d);
    }
    for (const auto& t : terms)
        elem.F = elem.F + basis_product(bases, t.alpha, gen.dim()).scaled(t.a);
    if (!(apply_LN(gen, elem.F) == elem.F.scaled(elem.eigenvalue)))
        throw Error("chaos element is not an exact eigenfunction of L_N");
    return elem;
}

ChaosElement homogeneous_sum(const GeneratorHandle& base, int k, int p,
                             const std::map<std::vector<int>, Rat>& coeffs, Rat shift) {
    if (k < 1 || p < 1 || p > k) throw ChaosError("homogeneous sum requires 1 <= p <= k");
    std::map<std::vector<int>, Rat> canonical;
    for (const auto& [key, value] : coeffs) {
        if (static_cast<int>(key.size()) != p)
            throw ChaosError("coefficient tuple length differs from p");
        std::vector<int> sorted = key;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] < 0 || sorted[i] >= k) throw ChaosError("coefficient index out of range");
            if (i > 0 && sorted[i] == sorted[i - 1])
                throw ChaosError("coefficient tensor has a nonzero diagonal entry");
        }
        auto [it, inserted] = canonical.emplace(std::move(sorted), value);
        if (!inserted && it->second != value)
            throw ChaosError("coefficient tensor is not symmetric");
    }
    const Rat perms = rat_factorial(static_cast<unsigned>(p));
    std::vector<ChaosTerm> terms;
    terms.reserve(canonical.size());
    for (const auto& [key, value] : canonical) {
        if (value == 0) continue;
        MultiIndex alpha(static_cast<std::size_t>(k), 0);
        for (int j : key) alpha[static_cast<std::size_t>(j)] = 1;
        terms.push_back(ChaosTerm{std::move(alpha), Rat(perms * value)});
    }
    return tensor_eigenfunction(iid_tensor(base, k), std::move(terms), std::move(shift));
}

namespace {

bool disjoint_supports(const std::vector<ChaosTerm>& terms, int dim) {
    std::vector<bool> used(static_cast<std::size_t>(dim), false);
    for (const auto& t : terms) {
        for (std::size_t i = 0; i < t.alpha.size(); ++i) {
            if (t.alpha[i] == 0) continue;
            if (used[i]) return false;
            used[i] = true;
        }
    }
    return true;
}

}  // namespace

std::vector<Rat> element_moments(const ChaosElement& elem, int rmax) {
    if (rmax < 0) throw Error("rmax must be nonnegative");
    std::vector<Rat> out(static_cast<std::size_t>(rmax) + 1, Rat(0));
    out[0] = Rat(1);
    if (rmax == 0) return out;

    if (rmax <= 4 && !elem.terms.empty() && disjoint_supports(elem.terms, elem.gen.dim())) {
        // independent centered blocks
        std::vector<std::array<Rat, 5>> block(elem.terms.size());
        for (std::size_t t = 0; t < elem.terms.size(); ++t) {
            for (int r = 1; r <= rmax; ++r) {
                Rat v = rat_pow(elem.terms[t].a, static_cast<unsigned>(r));
                for (std::size_t i = 0; i < elem.terms[t].alpha.size(); ++i) {
                    const unsigned d = elem.terms[t].alpha[i];
                    if (d == 0) continue;
                    const auto& g = elem.gen.coords[i];
                    const Poly pn = orthopoly_basis(g, static_cast<int>(d)).back();
                    v = Rat(v * integrate(g, pn.pow(static_cast<unsigned>(r))));
                }
                block[t][static_cast<std::size_t>(r)] = v;
            }
        }
        Rat s2(0), s3(0), s4(0), s2sq(0);
        for (const auto& b : block) {
            if (rmax >= 2) s2 = Rat(s2 + b[2]);
            if (rmax >= 3) s3 = Rat(s3 + b[3]);
            if (rmax >= 4) {
                s4 = Rat(s4 + b[4]);
                s2sq = Rat(s2sq + b[2] * b[2]);
            }
        }
        if (rmax >= 2) out[2] = s2;
        if (rmax >= 3) out[3] = s3;
        if (rmax >= 4) out[4] = Rat(s4 + 3 * (s2 * s2 - s2sq));
        return out;
    }

    // symbolic fallback; bail out when the monomial space is unreasonable
    double monomials = 1.0;
    for (int i = 0; i < elem.gen.dim(); ++i)
        monomials *= static_cast<double>(rmax * elem.F.degree_in(i) + 1);
    if (monomials > 2e6)
        throw Error("chaos element too large for symbolic moments; terms must have disjoint supports");
    MPoly power(elem.gen.dim(), Rat(1));
    for (int r = 1; r <= rmax; ++r) {
        power = power * elem.F;
        out[static_cast<std::size_t>(r)] = integrate_N(elem.gen, power);
    }
    return out;
}

std::vector<Rat> shifted_moments(const std::vector<Rat>& central, const Rat& shift) {
    std::vector<Rat> out(central.size(), Rat(0));
    for (std::size_t j = 0; j < central.size(); ++j) {
        Rat acc(0);
        for (std::size_t i = 0; i <= j; ++i) {
            const Rat term = Rat(rat_binom(static_cast<unsigned>(j), static_cast<unsigned>(i)) *
                                 central[i] * rat_pow(shift, static_cast<unsigned>(j - i)));
            acc = Rat(acc + term);
        }
        out[j] = acc;
    }
    return out;
}

}  // namespace pearsonchaos

// SPDX-License-Identifier: MIT
#include "pearsonchaos/spectral.hpp"

#include <sstream>

#include "pearsonchaos/errors.hpp"

namespace pearsonchaos {

Rat eigenvalue(const GeneratorHandle& gen, int n) {
    if (n < 0) throw SpectrumError("eigenvalue index must be nonnegative");
    if (n == 0) return Rat(0);
    // square-integrability of the degree-n eigenfunction: b2 < 1/(2n-1)
    if (gen.params.b2 > 0 && Rat(gen.params.b2 * Rat(2 * n - 1)) >= 1) {
        std::ostringstream msg;
        msg << "-lambda_" << n << " is not an eigenvalue: b2 >= 1/(2n-1)";
        throw SpectrumError(msg.str());
    }
    return Rat(-Rat(n) * Rat(1 - Rat(n - 1) * gen.params.b2) * gen.theta);
}

std::vector<Poly> orthopoly_basis(const GeneratorHandle& gen, int n) {
    if (n < 0) throw SpectrumError("degree must be nonnegative");
    std::vector<Rat> mom;
    try {
        mom = moments(gen.params, 2 * n);
    } catch (const MomentError&) {
        throw MomentError("moments insufficient for orthogonal polynomials up to degree " +
                          std::to_string(n));
    }
    auto inner = [&mom](const Poly& p, const Poly& q) {
        const Poly pq = p * q;
        Rat acc(0);
        for (int k = 0; k <= pq.degree(); ++k)
            acc = Rat(acc + pq.coeff(k) * mom[static_cast<std::size_t>(k)]);
        return acc;
    };
    std::vector<Poly> basis;
    std::vector<Rat> norms;
    basis.reserve(static_cast<std::size_t>(n) + 1);
    for (int d = 0; d <= n; ++d) {
        Poly p = Poly::monomial(d, Rat(1));
        for (int k = 0; k < d; ++k) {
            const Rat c = Rat(inner(p, basis[static_cast<std::size_t>(k)]) /
                              norms[static_cast<std::size_t>(k)]);
            if (c != 0) p = p - basis[static_cast<std::size_t>(k)].scaled(c);
        }
        const Rat nn = inner(p, p);
        if (nn <= 0) throw MomentError("moment Hankel data not positive definite");
        basis.push_back(std::move(p));
        norms.push_back(nn);
    }
    return basis;
}

Eigenfunction orthopoly(const GeneratorHandle& gen, int n) {
    auto basis = orthopoly_basis(gen, n);
    Eigenfunction f;
    f.degree = n;
    f.poly = basis.back();
    f.eigenvalue = eigenvalue(gen, n);
    if (!(apply_L(gen, f.poly) == f.poly.scaled(f.eigenvalue)))
        throw Error("orthogonal polynomial is not an exact eigenfunction of L");
    if (n >= 1 && is_chaotic(gen, n)) f.grade = chaos_grade(gen, n);
    return f;
}

std::vector<Rat> expand_in_basis(const Poly& f, const std::vector<Poly>& basis) {
    std::vector<Rat> comps(basis.size(), Rat(0));
    Poly rest = f;
    while (!rest.is_zero()) {
        const int d = rest.degree();
        if (d >= static_cast<int>(basis.size()))
            throw SpectrumError("polynomial degree exceeds the basis");
        const Rat c = Rat(rest.coeff(d) / basis[static_cast<std::size_t>(d)].leading());
        comps[static_cast<std::size_t>(d)] = c;
        rest = rest - basis[static_cast<std::size_t>(d)].scaled(c);
        if (!rest.is_zero() && rest.degree() >= d)
            throw Error("basis is not triangular");
    }
    return comps;
}

bool is_chaotic(const GeneratorHandle& gen, int n) {
    if (n < 1) throw ChaosError("chaotic-ness is defined for n >= 1");
    return Rat(gen.params.b2 * Rat(4 * n - 1)) < 1;
}

Rat chaos_grade(const GeneratorHandle& gen, int n) {
    if (!is_chaotic(gen, n)) {
        std::ostringstream msg;
        msg << "degree-" << n << " eigenfunctions are not chaotic (b2 >= 1/(4n-1))";
        throw ChaosError(msg.str());
    }
    // eta_n = 2(1-(2n-1)b2)/(1-(n-1)b2), the b2 = 0 case collapsing to 2
    const Rat num = Rat(1 - Rat(2 * n - 1) * gen.params.b2);
    const Rat den = Rat(1 - Rat(n - 1) * gen.params.b2);
    const Rat eta = Rat(2 * num / den);
    const Rat ratio = Rat(eigenvalue(gen, 2 * n) / eigenvalue(gen, n));
    if (eta != ratio) throw Error("chaos grade disagrees with lambda_{2n}/lambda_n");
    return eta;
}

std::map<int, Rat> square_expansion(const GeneratorHandle& gen, const Eigenfunction& f) {
    const int n = f.degree;
    if (n >= 1 && !is_chaotic(gen, n))
        throw ChaosError("square expansion requires a chaotic degree");
    std::vector<Poly> basis;
    try {
        basis = orthopoly_basis(gen, 2 * n);
    } catch (const MomentError&) {
        throw MomentError("moments insufficient for the square expansion");
    }
    const Poly sq = f.poly * f.poly;
    const auto comps = expand_in_basis(sq, basis);
    std::map<int, Rat> out;
    Poly rebuilt;
    for (int k = 0; k <= 2 * n; ++k) {
        const Rat& c = comps[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        out.emplace(k, c);
        rebuilt = rebuilt + basis[static_cast<std::size_t>(k)].scaled(c);
    }
    if (!(rebuilt == sq)) throw Error("square expansion failed to reconstruct F^2");
    return out;
}

}  // namespace pearsonchaos

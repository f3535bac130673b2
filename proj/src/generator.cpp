// SPDX-License-Identifier: MIT
#include "pearsonchaos/generator.hpp"

#include "pearsonchaos/errors.hpp"
#include "pearsonchaos/spectral.hpp"

namespace pearsonchaos {

GeneratorHandle make_generator(PearsonParams params) {
    Rat th = params.theta;
    return make_generator(std::move(params), th);
}

GeneratorHandle make_generator(PearsonParams params, Rat theta) {
    if (theta <= 0) throw ClassError("generator theta must be positive");
    return GeneratorHandle{std::move(params), std::move(theta)};
}

Poly apply_L(const GeneratorHandle& gen, const Poly& f) {
    const Poly drift = Poly({Rat(-gen.params.m), Rat(1)});  // x - m
    const Poly lf = gen.params.b() * f.derivative(2) - drift * f.derivative(1);
    return lf.scaled(gen.theta);
}

Poly gamma_op(const GeneratorHandle& gen, const Poly& f, const Poly& g) {
    const Poly diffusion = (gen.params.b() * f.derivative(1) * g.derivative(1)).scaled(gen.theta);
    const Poly by_definition =
        (apply_L(gen, f * g) - f * apply_L(gen, g) - g * apply_L(gen, f)).scaled(rat(1, 2));
    if (!(diffusion == by_definition))
        throw Error("carre du champ cross-check failed (definition vs diffusion form)");
    return diffusion;
}

Rat integrate(const GeneratorHandle& gen, const Poly& f) {
    if (f.is_zero()) return Rat(0);
    const auto mom = moments(gen.params, f.degree());
    Rat acc(0);
    for (int k = 0; k <= f.degree(); ++k)
        acc = Rat(acc + f.coeff(k) * mom[static_cast<std::size_t>(k)]);
    return acc;
}

Poly l_inverse(const GeneratorHandle& gen, const Poly& f) {
    if (f.is_zero()) return Poly();
    const int n = f.degree();
    if (n == 0) return Poly();  // pi_0 projection of a constant is itself
    std::vector<Poly> basis;
    try {
        basis = orthopoly_basis(gen, n);
    } catch (const MomentError&) {
        throw SpectrumError("outside the domain of L^-1: eigenfunctions up to degree " +
                            std::to_string(n) + " are not square-integrable");
    }
    const auto comps = expand_in_basis(f, basis);
    Poly out;
    for (int k = 1; k <= n; ++k) {
        if (comps[static_cast<std::size_t>(k)] == 0) continue;
        const Rat lam = Rat(-eigenvalue(gen, k));  // lambda_k > 0
        out = out + basis[static_cast<std::size_t>(k)].scaled(
                        Rat(-comps[static_cast<std::size_t>(k)] / lam));
    }
    return out;
}

}  // namespace pearsonchaos

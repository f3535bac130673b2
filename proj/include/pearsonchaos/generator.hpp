// SPDX-License-Identifier: MIT
//
// The Pearson Markov generator acting symbolically on polynomials:
// L f = -theta (x - m) f' + theta b(x) f'', the carre du champ
// Gamma(f,g) = theta b f' g', the pseudo-inverse on the polynomial
// eigen-span, and expectations under the invariant measure.
#pragma once

#include "pearsonchaos/pearson.hpp"
#include "pearsonchaos/poly.hpp"

namespace pearsonchaos {

struct GeneratorHandle {
    PearsonParams params;
    Rat theta;  // convention used by L (defaults to params.theta)
};

GeneratorHandle make_generator(PearsonParams params);
GeneratorHandle make_generator(PearsonParams params, Rat theta);

Poly apply_L(const GeneratorHandle& gen, const Poly& f);

/// Computed as theta*b*f'g' and cross-checked against the definition
/// (L(fg) - f Lg - g Lf)/2; the two must agree exactly.
Poly gamma_op(const GeneratorHandle& gen, const Poly& f, const Poly& g);

/// Pseudo-inverse on the polynomial eigen-span: expands f - int f dmu in the
/// monic orthogonal basis and divides component n by -lambda_n. Requires
/// square-integrable eigenfunctions up to deg f (b2 < 1/(2 deg - 1)).
Poly l_inverse(const GeneratorHandle& gen, const Poly& f);

/// int f dmu = sum_p coeff_p m_p, exact.
Rat integrate(const GeneratorHandle& gen, const Poly& f);

}  // namespace pearsonchaos

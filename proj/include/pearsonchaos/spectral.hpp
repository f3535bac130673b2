// SPDX-License-Identifier: MIT
//
// Spectrum of a Pearson generator: eigenvalues -n(1-(n-1)b2)theta for
// b2 < 1/(2n-1), monic orthogonal-polynomial eigenfunctions built by
// Gram-Schmidt on the exact moment data (the same path serves the
// heavy-tailed Romanovski families), chaotic-ness and chaos grades.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pearsonchaos/generator.hpp"

namespace pearsonchaos {

struct Eigenfunction {
    int degree = 0;
    Poly poly;               // monic
    Rat eigenvalue = Rat(0); // -lambda_n <= 0
    std::optional<Rat> grade;
};

/// -n(1-(n-1)b2)theta; n = 0 always belongs to the spectrum.
Rat eigenvalue(const GeneratorHandle& gen, int n);

/// Monic orthogonal polynomials P_0..P_n under mu (needs moments up to 2n).
std::vector<Poly> orthopoly_basis(const GeneratorHandle& gen, int n);

/// Degree-n eigenfunction; L P_n = -lambda_n P_n is asserted exactly.
Eigenfunction orthopoly(const GeneratorHandle& gen, int n);

/// Coefficients of f in a monic triangular basis (peeling from the top).
std::vector<Rat> expand_in_basis(const Poly& f, const std::vector<Poly>& basis);

/// True iff b2 < 1/(4n-1); n >= 1.
bool is_chaotic(const GeneratorHandle& gen, int n);

/// eta_n = 2 for b2 = 0, else 2(1 + n/(n-1-1/b2)); equals
/// lambda_{2n}/lambda_n, which is asserted.
Rat chaos_grade(const GeneratorHandle& gen, int n);

/// Coefficients of F^2 in the orthogonal eigenbasis up to degree 2n.
std::map<int, Rat> square_expansion(const GeneratorHandle& gen, const Eigenfunction& f);

}  // namespace pearsonchaos

// SPDX-License-Identifier: MIT
//
// Tensorized Pearson generators L_N = sum_i L_i and multi-index chaos:
// product eigenfunctions, Gamma_N, the pseudo-inverse, product-measure
// integration, homogeneous sums and tensor chaos grades.
#pragma once

#include <map>
#include <vector>

#include "pearsonchaos/mpoly.hpp"
#include "pearsonchaos/spectral.hpp"

namespace pearsonchaos {

struct TensorGenerator {
    std::vector<GeneratorHandle> coords;
    int dim() const { return static_cast<int>(coords.size()); }
};

TensorGenerator tensorize(std::vector<GeneratorHandle> coords);
TensorGenerator iid_tensor(const GeneratorHandle& base, int n);

/// L_N f = sum_i theta_i (b_i(x_i) d_i^2 f - (x_i - m_i) d_i f), exact.
MPoly apply_LN(const TensorGenerator& gen, const MPoly& f);

/// sum_i theta_i b_i(x_i) d_i f d_i g, cross-checked against the definition
/// (L_N(fg) - f L_N g - g L_N f)/2.
MPoly gamma_N(const TensorGenerator& gen, const MPoly& f, const MPoly& g);

/// Product-measure expectation: every monomial integrates to the product of
/// per-coordinate moments.
Rat integrate_N(const TensorGenerator& gen, const MPoly& f);

/// Coefficients of f in the product eigenbasis prod_i P_{alpha_i}(x_i).
std::map<MultiIndex, Rat> eigen_expand(const TensorGenerator& gen, const MPoly& f);

/// Expand in the product basis, divide component alpha by -sum_i lambda_{alpha_i},
/// drop the constant component.
MPoly l_inverse_N(const TensorGenerator& gen, const MPoly& f);

struct ChaosTerm {
    MultiIndex alpha;
    Rat a;
};

/// Eigenfunction F = sum a_alpha P_alpha of L_N within one eigenvalue class,
/// centered by construction; G = F + shift carries the translated mean.
struct ChaosElement {
    MPoly F;
    Rat eigenvalue;  // -lambda < 0
    Rat grade;       // chaos grade eta
    TensorGenerator gen;
    Rat shift;
    std::vector<ChaosTerm> terms;
};

/// Builds the element; rejects mixed eigenvalue classes and non-chaotic
/// coordinate degrees. L_N F = eigenvalue * F is asserted exactly.
ChaosElement tensor_eigenfunction(const TensorGenerator& gen, std::vector<ChaosTerm> terms,
                                  Rat shift = Rat(0));

/// Chaos grade: the largest eigenvalue magnitude in the expansion of
/// F^2 divided by lambda. Elements whose multi-indices are 0/1-valued use a
/// pairwise envelope over term supports (exact absent cancellations between
/// same-eigenspace cross products, which same-sign coefficients rule out);
/// everything else expands F^2 outright.
Rat tensor_chaos_grade(const TensorGenerator& gen, const std::vector<ChaosTerm>& terms);

/// Weighted-average grade (sum lambda_i eta_i)/(sum lambda_i) for a
/// single product eigenfunction P_alpha.
Rat tensor_grade_formula(const TensorGenerator& gen, const MultiIndex& alpha);

/// F = sum_{j_1..j_p distinct} a_{j_1..j_p} P_1(x_{j_1})...P_1(x_{j_p}) over k
/// iid copies of the base generator. Coefficient keys are index tuples
/// (any order); values are symmetrized on ingestion and diagonals rejected.
ChaosElement homogeneous_sum(const GeneratorHandle& base, int k, int p,
                             const std::map<std::vector<int>, Rat>& coeffs, Rat shift = Rat(0));

/// Exact E[F^r] for r = 0..rmax. Elements whose terms occupy pairwise
/// disjoint coordinate sets decompose into sums of independent centered
/// blocks (any k, rmax <= 4); otherwise the power is expanded symbolically,
/// which is guarded by a size limit.
std::vector<Rat> element_moments(const ChaosElement& elem, int rmax);

/// Moments of G = F + shift from the centered moments of F.
std::vector<Rat> shifted_moments(const std::vector<Rat>& central, const Rat& shift);

}  // namespace pearsonchaos

// SPDX-License-Identifier: MIT
//
// The quantitative four-moment machinery: the Q and U polynomials, their
// coefficient tables, the exact carre-du-champ left-hand side, the
// squared bound 2(1-b2-eta/4) int U + xi(1-b2)/2 int Q^2 with
// xi = max(eta - 2(1-b2), 0), and the sufficient convergence conditions.
#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pearsonchaos/tensor.hpp"

namespace pearsonchaos {

/// A Pearson law with four moments (b2 < 1/3), rescaled to theta = 1/2.
struct TargetSpec {
    PearsonParams params;   // theta == 1/2
    Rat theta_rescale;      // original theta / (1/2)
};

TargetSpec make_target(const PearsonParams& params);

/// Q(x) = x^2 + 2(b1+m)/(2b2-1) x + (b0 + m(b1+m)/(2b2-1))/(b2-1), monic.
Poly q_poly(const TargetSpec& target);

/// U(x) = (1-b2) Q^2(x) - (1/12) (Q'(x))^3 (x-m), quartic with leading
/// coefficient 1/3 - b2.
Poly u_poly(const TargetSpec& target);

/// c_j: coefficients of U; d_j: coefficients of Q^2 (j = 0..4).
struct UQCoefficients {
    std::array<Rat, 5> c;
    std::array<Rat, 5> d;
};
UQCoefficients uq_coefficients(const TargetSpec& target);

/// (sum c_j m_j, sum d_j m_j) with m_0 = 1 and m_1..m_4 supplied.
std::pair<Rat, Rat> moment_combination(const TargetSpec& target, const std::array<Rat, 4>& m);

/// int (Gamma(G, -L^-1 G) - b(G))^2 dmu over the element's own product
/// measure, with G = F + target mean; exact.
Rat lhs_exact(const ChaosElement& elem, const TargetSpec& target);

/// Residual of Gamma(G,-L^-1 G) - b(G) = (1/(2 lambda))(L + 2(1-b2) lambda)Q(G);
/// identically zero when lambda is the element's true eigenvalue magnitude.
/// Overriding lambda (e.g. a value from a mismatched theta convention)
/// exposes the convention dependence.
MPoly gamma_identity_residual(const ChaosElement& elem, const TargetSpec& target,
                    std::optional<Rat> lambda_override = std::nullopt);

enum class Regime { LowGrade, HighGrade };

struct BoundReport {
    Rat eta = Rat(0);
    Rat eta_tilde = Rat(0);  // 2(1-b2), the target's own first-chaos grade
    Rat xi = Rat(0);         // max(eta - eta_tilde, 0)
    Rat U_int = Rat(0);
    Rat Q2_int = Rat(0);
    std::optional<Rat> lhs;  // exact LHS when computed
    Rat rhs_sq = Rat(0);
    Regime regime = Regime::LowGrade;
    double bound = 0.0;   // c_H * sqrt(rhs_sq), up to the Stein constant
    double c_H = 1.0;
    Rat theta_rescale = Rat(1);
    std::string measure = "mu_k";  // expectations taken under the element's own measure
};

enum class LhsMode { Auto, Exact, Skip };

/// Evaluates the four-moment bound for G = F + target mean. When the
/// LHS is computed, lhs <= rhs_sq is asserted. A negative rhs_sq is flagged
/// as an inconsistency.
BoundReport bound(const ChaosElement& elem, const TargetSpec& target, double c_H = 1.0,
                  LhsMode lhs_mode = LhsMode::Auto);

struct ConvergenceVerdict {
    bool cond_i = false;   // int U(G_k) dmu -> 0 (last value below tolerance)
    bool cond_ii = false;  // high-grade subsequence: bounded Q^2 and shrinking eta gap
    bool pass = false;
    std::string detail;
};

/// Finite-sequence reading of the sufficient convergence conditions.
ConvergenceVerdict convergence_conditions(std::span<const BoundReport> reports,
                                          double u_tol = 1e-2, double xi_tol = 1e-1);

std::string to_string(Regime r);

}  // namespace pearsonchaos

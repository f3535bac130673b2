// SPDX-License-Identifier: MIT
#include "pearsonchaos/fourmoments.hpp"

#include <cmath>
#include <sstream>

#include "pearsonchaos/errors.hpp"

namespace pearsonchaos {

TargetSpec make_target(const PearsonParams& params) {
    params.validate();
    if (Rat(3 * params.b2) >= 1)
        throw ClassError("four moments require b2 < 1/3");
    TargetSpec t;
    t.params = params;
    t.theta_rescale = Rat(params.theta * 2);  // original theta / (1/2)
    t.params.theta = rat(1, 2);
    return t;
}

Poly q_poly(const TargetSpec& target) {
    const Rat& m = target.params.m;
    const Rat& b0 = target.params.b0;
    const Rat& b1 = target.params.b1;
    const Rat& b2 = target.params.b2;
    const Rat den1 = Rat(2 * b2 - 1);  // nonzero for b2 < 1/3
    const Rat den2 = Rat(b2 - 1);
    const Rat q1 = Rat(2 * (b1 + m) / den1);
    const Rat q0 = Rat((b0 + m * (b1 + m) / den1) / den2);
    return Poly({q0, q1, Rat(1)});
}

Poly u_poly(const TargetSpec& target) {
    const Poly q = q_poly(target);
    const Poly qp = q.derivative();
    const Poly drift = Poly({Rat(-target.params.m), Rat(1)});  // x - m
    return (q * q).scaled(Rat(1 - target.params.b2)) - (qp.pow(3) * drift).scaled(rat(1, 12));
}

UQCoefficients uq_coefficients(const TargetSpec& target) {
    const Poly u = u_poly(target);
    const Poly q = q_poly(target);
    const Poly q2 = q * q;
    UQCoefficients out;
    for (int j = 0; j <= 4; ++j) {
        out.c[static_cast<std::size_t>(j)] = u.coeff(j);
        out.d[static_cast<std::size_t>(j)] = q2.coeff(j);
    }
    return out;
}

std::pair<Rat, Rat> moment_combination(const TargetSpec& target, const std::array<Rat, 4>& m) {
    const auto cd = uq_coefficients(target);
    Rat u = cd.c[0], q2 = cd.d[0];
    for (int j = 1; j <= 4; ++j) {
        u = Rat(u + cd.c[static_cast<std::size_t>(j)] * m[static_cast<std::size_t>(j - 1)]);
        q2 = Rat(q2 + cd.d[static_cast<std::size_t>(j)] * m[static_cast<std::size_t>(j - 1)]);
    }
    return {u, q2};
}

namespace {

MPoly translated_element(const ChaosElement& elem, const TargetSpec& target) {
    return elem.F + MPoly(elem.gen.dim(), target.params.m);
}

MPoly gamma_with_inverse(const ChaosElement& elem, const MPoly& g_poly) {
    const MPoly minus_linv = -l_inverse_N(elem.gen, g_poly);
    return gamma_N(elem.gen, g_poly, minus_linv);
}

}  // namespace

Rat lhs_exact(const ChaosElement& elem, const TargetSpec& target) {
    const MPoly g = translated_element(elem, target);
    const MPoly core = gamma_with_inverse(elem, g) - compose(target.params.b(), g);
    return integrate_N(elem.gen, core * core);
}

MPoly gamma_identity_residual(const ChaosElement& elem, const TargetSpec& target,
                    std::optional<Rat> lambda_override) {
    const Rat lambda = lambda_override ? *lambda_override : Rat(-elem.eigenvalue);
    if (lambda <= 0) throw ChaosError("the gamma identity residual needs a positive lambda");
    const MPoly g = translated_element(elem, target);
    const MPoly lhs = gamma_with_inverse(elem, g) - compose(target.params.b(), g);
    const MPoly qg = compose(q_poly(target), g);
    const Rat two_lambda_inv = Rat(1 / (2 * lambda));
    const MPoly rhs =
        (apply_LN(elem.gen, qg) + qg.scaled(Rat(2 * (1 - target.params.b2) * lambda)))
            .scaled(two_lambda_inv);
    return lhs - rhs;
}

BoundReport bound(const ChaosElement& elem, const TargetSpec& target, double c_H,
                  LhsMode lhs_mode) {
    BoundReport rep;
    rep.c_H = c_H;
    rep.theta_rescale = target.theta_rescale;
    rep.eta = elem.grade;
    rep.eta_tilde = Rat(2 * (1 - target.params.b2));
    rep.regime = rep.eta <= rep.eta_tilde ? Regime::LowGrade : Regime::HighGrade;
    rep.xi = rep.regime == Regime::HighGrade ? Rat(rep.eta - rep.eta_tilde) : Rat(0);

    const auto central = element_moments(elem, 4);
    const auto mg = shifted_moments(central, target.params.m);
    const auto [u_int, q2_int] =
        moment_combination(target, {mg[1], mg[2], mg[3], mg[4]});
    rep.U_int = u_int;
    rep.Q2_int = q2_int;

    const Rat low_factor = Rat(2 * (1 - target.params.b2 - rep.eta / 4));
    rep.rhs_sq = Rat(low_factor * rep.U_int + rep.xi * Rat(1 - target.params.b2) / 2 * rep.Q2_int);
    if (rep.rhs_sq < 0)
        throw Error("negative squared bound: inconsistent grade/moment data");
    rep.bound = c_H * std::sqrt(to_double(rep.rhs_sq));

    bool want_lhs = lhs_mode == LhsMode::Exact;
    if (lhs_mode == LhsMode::Auto) {
        const double n_terms = static_cast<double>(elem.F.term_count());
        want_lhs = n_terms * n_terms <= 250'000.0;
    }
    if (want_lhs) {
        rep.lhs = lhs_exact(elem, target);
        if (*rep.lhs > rep.rhs_sq)
            throw Error("four-moment inequality violated: exact LHS exceeds the squared bound");
    }
    return rep;
}

ConvergenceVerdict convergence_conditions(std::span<const BoundReport> reports, double u_tol,
                                          double xi_tol) {
    ConvergenceVerdict v;
    if (reports.empty()) {
        v.detail = "empty sequence";
        return v;
    }
    std::ostringstream detail;

    const double last_u = std::abs(to_double(reports.back().U_int));
    v.cond_i = last_u <= u_tol;
    detail << "cond (i): |U_int| trend ends at " << last_u << (v.cond_i ? " <= " : " > ")
           << u_tol;

    std::vector<const BoundReport*> high;
    for (const auto& r : reports)
        if (r.regime == Regime::HighGrade) high.push_back(&r);
    if (high.empty()) {
        v.cond_ii = true;
        detail << "; cond (ii): no high-grade terms";
    } else {
        const double xi_first = to_double(high.front()->xi);
        const double xi_last = to_double(high.back()->xi);
        const bool shrinking = high.size() == 1 ? true : xi_last < xi_first;
        v.cond_ii = shrinking && xi_last <= xi_tol;
        detail << "; cond (ii): high-grade eta gap " << xi_first << " -> " << xi_last
               << (v.cond_ii ? " shrinking below " : " fails tolerance ") << xi_tol;
    }
    v.pass = v.cond_i && v.cond_ii;
    v.detail = detail.str();
    return v;
}

std::string to_string(Regime r) { return r == Regime::LowGrade ? "low-grade" : "high-grade"; }

}  // namespace pearsonchaos

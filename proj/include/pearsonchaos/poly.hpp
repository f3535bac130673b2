// SPDX-License-Identifier: MIT
//
// Exact univariate polynomials over the rationals. Coefficients ascending
// by degree, trailing zeros stripped; the zero polynomial has an empty
// coefficient vector. All operations are pure.
#pragma once

#include <string>
#include <vector>

#include "pearsonchaos/rational.hpp"

namespace pearsonchaos {

class Poly {
public:
    Poly() = default;
    explicit Poly(const Rat& constant);
    explicit Poly(std::vector<Rat> ascending_coeffs);

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(Rat(1)); }
    /// x
    static Poly x() { return monomial(1, Rat(1)); }
    static Poly monomial(int degree, const Rat& coeff);

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree of the zero polynomial is -1 by convention.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    /// Coefficient of x^k (zero outside the stored range).
    const Rat& coeff(int k) const;
    Rat leading() const { return is_zero() ? Rat(0) : coeffs_.back(); }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rat& s) const;
    bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }

    Poly derivative(unsigned order = 1) const;
    /// outer(inner), exact.
    Poly compose(const Poly& inner) const;
    Poly pow(unsigned e) const;

    Rat eval(const Rat& x) const;
    double eval(double x) const;

    /// Canonical text form, ascending degree, e.g. "1/4 - x + x^2".
    std::string str(const std::string& var = "x") const;

private:
    void normalize();
    std::vector<Rat> coeffs_;
};

inline Poly operator*(const Rat& s, const Poly& p) { return p.scaled(s); }

}  // namespace pearsonchaos

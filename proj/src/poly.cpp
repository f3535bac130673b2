// SPDX-License-Identifier: MIT
#include "pearsonchaos/poly.hpp"

#include <sstream>

namespace pearsonchaos {

namespace {
const Rat kZero(0);
}

Poly::Poly(const Rat& constant) {
    if (constant != 0) coeffs_.push_back(constant);
}

Poly::Poly(std::vector<Rat> ascending_coeffs) : coeffs_(std::move(ascending_coeffs)) {
    normalize();
}

Poly Poly::monomial(int degree, const Rat& coeff) {
    if (coeff == 0) return Poly();
    std::vector<Rat> c(static_cast<std::size_t>(degree) + 1, Rat(0));
    c.back() = coeff;
    return Poly(std::move(c));
}

void Poly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Rat& Poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return kZero;
    return coeffs_[static_cast<std::size_t>(k)];
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rat> c(std::max(coeffs_.size(), o.coeffs_.size()), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = Rat(coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i)));
    return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    std::vector<Rat> c(coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = Rat(-coeffs_[i]);
    return Poly(std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rat> c(coeffs_.size() + o.coeffs_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            c[i + j] = Rat(c[i + j] + coeffs_[i] * o.coeffs_[j]);
    return Poly(std::move(c));
}

Poly Poly::scaled(const Rat& s) const {
    if (s == 0) return Poly();
    std::vector<Rat> c(coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = Rat(coeffs_[i] * s);
    return Poly(std::move(c));
}

Poly Poly::derivative(unsigned order) const {
    Poly p = *this;
    for (unsigned k = 0; k < order; ++k) {
        if (p.coeffs_.size() <= 1) return Poly();
        std::vector<Rat> c(p.coeffs_.size() - 1);
        for (std::size_t i = 1; i < p.coeffs_.size(); ++i)
            c[i - 1] = Rat(p.coeffs_[i] * Rat(static_cast<long>(i)));
        p = Poly(std::move(c));
    }
    return p;
}

Poly Poly::compose(const Poly& inner) const {
    // Horner on the outer coefficients
    Poly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * inner + Poly(*it);
    return acc;
}

Poly Poly::pow(unsigned e) const {
    Poly acc = Poly::one();
    Poly b = *this;
    while (e > 0) {
        if (e & 1u) acc = acc * b;
        b = b * b;
        e >>= 1u;
    }
    return acc;
}

Rat Poly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = Rat(acc * x + *it);
    return acc;
}

double Poly::eval(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const Rat& c = coeffs_[k];
        if (c == 0) continue;
        Rat a = Rat(abs(c));
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        const bool unit = (a == 1);
        if (k == 0) {
            out << rat_str(a);
        } else {
            if (!unit) out << rat_str(a) << " ";
            out << var;
            if (k > 1) out << "^" << k;
        }
    }
    return out.str();
}

}  // namespace pearsonchaos

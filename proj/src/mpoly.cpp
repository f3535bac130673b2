// SPDX-License-Identifier: MIT
#include "pearsonchaos/mpoly.hpp"

#include <sstream>

namespace pearsonchaos {

MPoly::MPoly(int dim) : dim_(dim) {
    if (dim < 1) throw DimensionMismatch("MPoly dimension must be >= 1");
}

MPoly::MPoly(int dim, const Rat& constant) : MPoly(dim) {
    if (constant != 0) terms_.emplace(MultiIndex(static_cast<std::size_t>(dim), 0), constant);
}

MPoly MPoly::variable(int dim, int i) {
    MPoly p(dim);
    if (i < 0 || i >= dim) throw DimensionMismatch("variable index out of range");
    MultiIndex a(static_cast<std::size_t>(dim), 0);
    a[static_cast<std::size_t>(i)] = 1;
    p.terms_.emplace(std::move(a), Rat(1));
    return p;
}

MPoly MPoly::from_univariate(const Poly& p, int dim, int i) {
    MPoly out(dim);
    if (i < 0 || i >= dim) throw DimensionMismatch("variable index out of range");
    for (int k = 0; k <= p.degree(); ++k) {
        if (p.coeff(k) == 0) continue;
        MultiIndex a(static_cast<std::size_t>(dim), 0);
        a[static_cast<std::size_t>(i)] = static_cast<unsigned>(k);
        out.terms_.emplace(std::move(a), p.coeff(k));
    }
    return out;
}

void MPoly::check_dim(const MPoly& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("MPoly dimensions differ");
}

Rat MPoly::coeff(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? Rat(0) : it->second;
}

void MPoly::add_term(const MultiIndex& alpha, const Rat& c) {
    if (alpha.size() != static_cast<std::size_t>(dim_))
        throw DimensionMismatch("multi-index length differs from dimension");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(alpha, c);
    if (!inserted) {
        it->second = Rat(it->second + c);
        if (it->second == 0) terms_.erase(it);
    }
}

int MPoly::degree_in(int i) const {
    int d = 0;
    for (const auto& [a, c] : terms_) d = std::max(d, static_cast<int>(a[static_cast<std::size_t>(i)]));
    return d;
}

int MPoly::total_degree() const {
    int d = 0;
    for (const auto& [a, c] : terms_) {
        int s = 0;
        for (unsigned e : a) s += static_cast<int>(e);
        d = std::max(d, s);
    }
    return d;
}

MPoly MPoly::operator+(const MPoly& o) const {
    check_dim(o);
    MPoly out = *this;
    for (const auto& [a, c] : o.terms_) out.add_term(a, c);
    return out;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator-() const {
    MPoly out(dim_);
    for (const auto& [a, c] : terms_) out.terms_.emplace(a, Rat(-c));
    return out;
}

MPoly MPoly::operator*(const MPoly& o) const {
    check_dim(o);
    MPoly out(dim_);
    MultiIndex idx(static_cast<std::size_t>(dim_));
    for (const auto& [a, ca] : terms_) {
        for (const auto& [b, cb] : o.terms_) {
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = a[i] + b[i];
            out.add_term(idx, Rat(ca * cb));
        }
    }
    return out;
}

MPoly MPoly::scaled(const Rat& s) const {
    MPoly out(dim_);
    if (s == 0) return out;
    for (const auto& [a, c] : terms_) out.terms_.emplace(a, Rat(c * s));
    return out;
}

MPoly MPoly::partial(int i) const {
    MPoly out(dim_);
    const auto ui = static_cast<std::size_t>(i);
    for (const auto& [a, c] : terms_) {
        if (a[ui] == 0) continue;
        MultiIndex b = a;
        b[ui] -= 1;
        out.add_term(b, Rat(c * Rat(static_cast<long>(a[ui]))));
    }
    return out;
}

Rat MPoly::eval(const std::vector<Rat>& point) const {
    if (point.size() != static_cast<std::size_t>(dim_))
        throw DimensionMismatch("evaluation point has wrong dimension");
    Rat acc(0);
    for (const auto& [a, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > 0) t = Rat(t * rat_pow(point[i], a[i]));
        acc = Rat(acc + t);
    }
    return acc;
}

double MPoly::eval(const std::vector<double>& point) const {
    if (point.size() != static_cast<std::size_t>(dim_))
        throw DimensionMismatch("evaluation point has wrong dimension");
    double acc = 0.0;
    for (const auto& [a, c] : terms_) {
        double t = to_double(c);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double x = point[i];
            unsigned e = a[i];
            double px = 1.0;
            double b = x;
            while (e > 0) {
                if (e & 1u) px *= b;
                b *= b;
                e >>= 1u;
            }
            t *= px;
        }
        acc += t;
    }
    return acc;
}

Poly MPoly::to_univariate() const {
    if (dim_ != 1) throw DimensionMismatch("to_univariate requires dim == 1");
    std::vector<Rat> c(static_cast<std::size_t>(degree_in(0)) + 1, Rat(0));
    for (const auto& [a, v] : terms_) c[a[0]] = v;
    return Poly(std::move(c));
}

std::string MPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [a, c] : terms_) {
        Rat abs_c = Rat(abs(c));
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool has_var = false;
        std::ostringstream mono;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            if (has_var) mono << " ";
            mono << "x" << (i + 1);
            if (a[i] > 1) mono << "^" << a[i];
            has_var = true;
        }
        if (!has_var) {
            out << rat_str(abs_c);
        } else {
            if (abs_c != 1) out << rat_str(abs_c) << " ";
            out << mono.str();
        }
    }
    return out.str();
}

MPoly compose(const Poly& outer, const MPoly& inner) {
    MPoly acc(inner.dim());
    for (int k = outer.degree(); k >= 0; --k) {
        acc = acc * inner;
        if (outer.coeff(k) != 0) acc = acc + MPoly(inner.dim(), outer.coeff(k));
    }
    return acc;
}

}  // namespace pearsonchaos

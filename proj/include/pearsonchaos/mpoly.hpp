// SPDX-License-Identifier: MIT
//
// Sparse multivariate polynomials over the rationals: a map from
// multi-indices to coefficients, no stored zeros. Dense representations
// blow up at degree 4n in N variables, so everything stays sparse.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "pearsonchaos/poly.hpp"

namespace pearsonchaos {

using MultiIndex = std::vector<unsigned>;

class MPoly {
public:
    using TermMap = std::map<MultiIndex, Rat>;

    explicit MPoly(int dim);
    MPoly(int dim, const Rat& constant);

    static MPoly variable(int dim, int i);
    /// Embeds a univariate polynomial as p(x_i).
    static MPoly from_univariate(const Poly& p, int dim, int i);

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    Rat coeff(const MultiIndex& alpha) const;
    void add_term(const MultiIndex& alpha, const Rat& c);

    int degree_in(int i) const;
    int total_degree() const;

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator-() const;
    MPoly operator*(const MPoly& o) const;
    MPoly scaled(const Rat& s) const;
    bool operator==(const MPoly& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

    MPoly partial(int i) const;

    Rat eval(const std::vector<Rat>& point) const;
    double eval(const std::vector<double>& point) const;

    /// Dim must be 1.
    Poly to_univariate() const;

    /// Canonical text form; variables render as x1..xN.
    std::string str() const;

private:
    void check_dim(const MPoly& o) const;
    int dim_ = 1;
    TermMap terms_;
};

inline MPoly operator*(const Rat& s, const MPoly& p) { return p.scaled(s); }

/// outer(inner), exact; outer univariate, inner multivariate.
MPoly compose(const Poly& outer, const MPoly& inner);

}  // namespace pearsonchaos

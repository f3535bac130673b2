// SPDX-License-Identifier: MIT
#include "pearsonchaos/rational.hpp"

#include <cctype>

namespace pearsonchaos {

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw IoError("empty rational literal");
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        // decimal literal: scale out the fractional digits
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const std::size_t frac_len = text.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw IoError("bad rational literal '" + text + "'");
        mpz_class num;
        if (num.set_str(digits, 10) != 0)
            throw IoError("bad rational literal '" + text + "'");
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        Rat r(num, den);
        r.canonicalize();
        return r;
    }
    Rat r;
    if (r.set_str(text, 10) != 0 || r.get_den() == 0)
        throw IoError("bad rational literal '" + text + "'");
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

Rat rat_pow(const Rat& base, unsigned exp) {
    Rat acc(1);
    Rat b = base;
    unsigned e = exp;
    while (e > 0) {
        if (e & 1u) acc = Rat(acc * b);
        b = Rat(b * b);
        e >>= 1u;
    }
    return acc;
}

Rat rat_binom(unsigned n, unsigned k) {
    if (k > n) return Rat(0);
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), n, k);
    return Rat(z);
}

Rat rat_factorial(unsigned n) {
    mpz_class z;
    mpz_fac_ui(z.get_mpz_t(), n);
    return Rat(z);
}

bool rat_sqrt_exact(const Rat& r, Rat& root) {
    if (r < 0) return false;
    mpz_class num = r.get_num(), den = r.get_den();
    mpz_class sn, sd;
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    root = Rat(sn, sd);
    root.canonicalize();
    return true;
}

}  // namespace pearsonchaos

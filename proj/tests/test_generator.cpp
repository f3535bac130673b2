// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "pearsonchaos/generator.hpp"
#include "pearsonchaos/verify.hpp"

using namespace pearsonchaos;

TEST_CASE("L on the spec examples") {
    const GeneratorHandle gauss = make_generator(gaussian_params(Rat(0), Rat(1)));
    CHECK(apply_L(gauss, Poly::one()).is_zero());
    CHECK(apply_L(gauss, Poly::x()) == Poly({Rat(0), Rat(-1)}));
    const Poly h2({Rat(-1), Rat(0), Rat(1)});
    CHECK(apply_L(gauss, h2) == h2.scaled(Rat(-2)));

    // explicit theta scaling
    const GeneratorHandle half = make_generator(gaussian_params(Rat(0), Rat(1)), rat(1, 2));
    CHECK(apply_L(half, h2) == h2.scaled(Rat(-1)));
}

TEST_CASE("carre du champ") {
    const GeneratorHandle gauss = make_generator(gaussian_params(Rat(0), Rat(1)));
    CHECK(gamma_op(gauss, Poly::x(), Poly::x()) == Poly::one());  // = b(x)
    CHECK(gamma_op(gauss, Poly(Rat(5)), Poly::x()).is_zero());
    const Poly h2({Rat(-1), Rat(0), Rat(1)});
    CHECK(gamma_op(gauss, h2, h2) == Poly::monomial(2, Rat(4)));  // b (f')^2 = 4x^2
}

TEST_CASE("pseudo-inverse on the polynomial eigen-span") {
    const GeneratorHandle gauss = make_generator(gaussian_params(Rat(0), Rat(1)));
    CHECK(l_inverse(gauss, Poly(Rat(3))).is_zero());
    CHECK(l_inverse(gauss, Poly::x()) == Poly({Rat(0), Rat(-1)}));
    // x^2 = H2 + 1 -> -H2/2
    CHECK(l_inverse(gauss, Poly::monomial(2, Rat(1))) == Poly({rat(1, 2), Rat(0), rat(-1, 2)}));

    // L L^-1 f = f - int f dmu, randomized and exact
    CounterStream rng(21, 1);
    for (int t = 0; t < 30; ++t) {
        const PearsonParams p = random_fourmoment_params(rng);
        const GeneratorHandle gen = make_generator(p);
        const auto mo = max_moment_order(p);
        const int cap = static_cast<int>(std::min<long>(3, mo ? (*mo + 1) / 2 : 3));
        const Poly f = random_poly(rng, cap);
        const Poly inv = l_inverse(gen, f);
        const Poly back = apply_L(gen, inv);
        CHECK(back == f - Poly(integrate(gen, f)));
    }

    // degree outside the square-integrable span
    const GeneratorHandle heavy = make_generator(student_params(Rat(6)));  // b2 = 1/5
    CHECK_THROWS_AS(l_inverse(heavy, Poly::monomial(3, Rat(1))), SpectrumError);
}

TEST_CASE("integration against the invariant measure") {
    const GeneratorHandle gauss = make_generator(gaussian_params(Rat(0), Rat(1)));
    CHECK(integrate(gauss, Poly::one()) == Rat(1));
    CHECK(integrate(gauss, Poly::monomial(4, Rat(1))) == Rat(3));
    CHECK_THROWS_AS(
        integrate(make_generator(student_params(Rat(5))), Poly::monomial(6, Rat(1))),
        MomentError);
}

TEST_CASE("exact generator identities on random Pearson laws") {
    for (const auto& r : verify_identities(2024, 40)) {
        INFO(r.name);
        CHECK(r.pass);
    }
}

// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "pearsonchaos/io.hpp"
#include "pearsonchaos/verify.hpp"

using namespace pearsonchaos;

TEST_CASE("params JSON schema round trip") {
    const auto params = student_params(Rat(9), rat(3, 2));
    const json j = params_to_json(params);
    CHECK(j.at("b2").get<std::string>() == "1/8");
    CHECK(j.at("support_l").get<std::string>() == "-inf");
    const auto back = params_from_json(j);
    CHECK(back.theta == params.theta);
    CHECK(back.m == params.m);
    CHECK(back.b0 == params.b0);
    CHECK(back.b1 == params.b1);
    CHECK(back.b2 == params.b2);
    CHECK(back.support_l == params.support_l);
    CHECK(back.support_u == params.support_u);

    // numbers and strings both accepted; missing support derives the natural one
    const auto parsed = params_from_json(json::parse(
        R"({"theta": 1, "m": 0.5, "b0": 0, "b1": "1/4", "b2": "-1/4"})"));
    CHECK(parsed.b2 == rat(-1, 4));
    CHECK(parsed.support_l == doctest::Approx(0.0));
    CHECK(parsed.support_u == doctest::Approx(1.0));

    CHECK_THROWS_AS(params_from_json(json::parse(R"({"theta": 1})")), IoError);
    CHECK_THROWS_AS(params_from_json(json::parse(
                        R"({"theta":1,"m":0,"b0":1,"b1":0,"b2":"x"})")),
                    IoError);
}

TEST_CASE("rational parsing forms") {
    CHECK(parse_rat("3/4") == rat(3, 4));
    CHECK(parse_rat("-7") == Rat(-7));
    CHECK(parse_rat("0.25") == rat(1, 4));
    CHECK(parse_rat("-1.5") == rat(-3, 2));
    CHECK_THROWS_AS(parse_rat("a/b"), IoError);
    CHECK_THROWS_AS(parse_rat(""), IoError);
}

TEST_CASE("chaos element JSON descriptor") {
    const json j = json::parse(R"({
        "N": 2,
        "base": {"theta": 1, "m": 0, "b0": 1, "b1": 0, "b2": 0},
        "terms": [{"alpha": [1, 1], "a": "1/2"}],
        "shift": "0"
    })");
    const ChaosElement elem = chaos_element_from_json(j);
    CHECK(elem.eigenvalue == Rat(-2));
    CHECK(elem.grade == Rat(2));
    const json out = chaos_element_to_json(elem);
    const ChaosElement again = chaos_element_from_json(out);
    CHECK(again.F == elem.F);
    CHECK(again.eigenvalue == elem.eigenvalue);

    // mixed-coordinate form
    const json mixed = json::parse(R"({
        "N": 2,
        "coords": [
            {"theta": 1, "m": "1/2", "b0": 0, "b1": "1/2", "b2": "-1/2"},
            {"theta": 1, "m": 0, "b0": 1, "b1": 0, "b2": 0}
        ],
        "terms": [{"alpha": [1, 1], "a": "1"}]
    })");
    CHECK(chaos_element_from_json(mixed).grade == rat(5, 2));
}

TEST_CASE("bound report JSON carries the exact fields") {
    const TargetSpec target = make_target(gaussian_params(Rat(0), Rat(1)));
    const TensorGenerator gen = tensorize({make_generator(gaussian_params(Rat(0), Rat(1)))});
    const ChaosElement h2 = tensor_eigenfunction(gen, {ChaosTerm{MultiIndex{2}, Rat(1)}});
    const json j = bound_report_to_json(bound(h2, target, 1.0, LhsMode::Exact));
    CHECK(j.at("lhs_exact").get<std::string>() == "9");
    CHECK(j.at("U_int").get<std::string>() == "17");
    CHECK(j.at("Q2_int").get<std::string>() == "57");
    CHECK(j.at("rhs_sq").get<std::string>() == "17");
    CHECK(j.at("regime").get<std::string>() == "low-grade");
    CHECK(j.at("measure").get<std::string>() == "mu_k");
}

TEST_CASE("experiment descriptor round trip and CSV stability") {
    ExperimentDescriptor d;
    d.target = gaussian_params(Rat(0), Rat(1));
    d.family = ChaosFamily::MatchingPairs;
    d.k_grid = {10, 100};
    d.mc_n = 20000;
    d.seed = 7;
    const ExperimentDescriptor back = experiment_from_json(experiment_to_json(d));
    CHECK(back.k_grid == d.k_grid);
    CHECK(back.family == d.family);
    CHECK(back.mc_n == d.mc_n);

    const auto rows = run_convergence(d);
    const std::string csv1 = convergence_csv(rows);
    const std::string csv2 = convergence_csv(run_convergence(back));
    CHECK(csv1 == csv2);  // byte-identical reruns
    CHECK(csv1.substr(0, csv1.find('\n')) ==
          "k,m1,m2,m3,m4,U_value,Q2_value,eta,xi,kolmogorov,bound");

    CHECK_THROWS_AS(experiment_from_json(json::parse(R"({"target": {}})")), IoError);
}

TEST_CASE("inline JSON loader") {
    CHECK(load_json_argument(R"({"a": 1})").at("a") == 1);
    CHECK_THROWS_AS(load_json_argument("{broken"), IoError);
    CHECK_THROWS_AS(load_json_argument("/nonexistent/file.json"), IoError);
}

// SPDX-License-Identifier: MIT
//
// Command-line front door: distribution queries, chaos grades, bound
// computation, the exact verification suites, convergence experiments and
// SDE simulation. Exit codes: 0 success, 1 verification failure, 2
// usage/input error.
#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

#include "pearsonchaos/errors.hpp"
#include "pearsonchaos/io.hpp"
#include "pearsonchaos/verify.hpp"

namespace pc = pearsonchaos;

namespace {

std::string render(const pc::Rat& value, bool as_float) {
    if (!as_float) return pc::rat_str(value);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", pc::to_double(value));
    return buf;
}

int cmd_moments(const std::string& params_arg, int pmax, bool as_float) {
    const pc::PearsonParams params = pc::params_from_json(pc::load_json_argument(params_arg));
    const auto mom = pc::moments(params, pmax);
    std::cout << "p,moment\n";
    for (int p = 0; p <= pmax; ++p)
        std::cout << p << "," << render(mom[static_cast<std::size_t>(p)], as_float) << "\n";
    return 0;
}

int cmd_grade(const std::string& params_arg, int n, bool as_float) {
    const pc::PearsonParams params = pc::params_from_json(pc::load_json_argument(params_arg));
    const pc::GeneratorHandle gen = pc::make_generator(params);
    const pc::Rat eta_tilde = pc::Rat(2 * (1 - params.b2));
    std::cout << "n: " << n << "\n";
    std::cout << "eta_tilde: " << render(eta_tilde, as_float) << "\n";
    if (!pc::is_chaotic(gen, n)) {
        std::cout << "chaotic: false\neta: not chaotic\n";
        return 0;
    }
    std::cout << "chaotic: true\neta: " << render(pc::chaos_grade(gen, n), as_float) << "\n";
    return 0;
}

int cmd_bound(const std::string& params_arg, const std::string& chaos_arg, double c_h,
              bool exact_lhs) {
    const pc::PearsonParams params = pc::params_from_json(pc::load_json_argument(params_arg));
    const pc::TargetSpec target = pc::make_target(params);
    const pc::ChaosElement elem = pc::chaos_element_from_json(pc::load_json_argument(chaos_arg));
    const pc::BoundReport report =
        pc::bound(elem, target, c_h, exact_lhs ? pc::LhsMode::Exact : pc::LhsMode::Auto);
    nlohmann::json j = pc::bound_report_to_json(report);
    j["Q"] = pc::q_poly(target).str();
    j["U"] = pc::u_poly(target).str();
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials) {
    std::vector<pc::CheckResult> results;
    if (suite == "identities")
        results = pc::verify_identities(seed, trials);
    else if (suite == "table1")
        results = pc::verify_table1(seed, trials);
    else if (suite == "grades")
        results = pc::verify_grades(seed);
    else if (suite == "stein")
        results = pc::verify_stein();
    else
        throw pc::IoError("unknown suite '" + suite + "'");
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.note.empty()) std::cout << " (" << r.note << ")";
        std::cout << "\n";
        all = all && r.pass;
    }
    std::cout << (all ? "verification passed" : "verification FAILED") << "\n";
    return all ? 0 : 1;
}

int cmd_converge(const std::string& descriptor_arg, const std::string& out_override) {
    pc::ExperimentDescriptor d = pc::experiment_from_json(pc::load_json_argument(descriptor_arg));
    if (!out_override.empty()) d.output = out_override;
    const auto rows = pc::run_convergence(d);
    const std::string csv = pc::convergence_csv(rows);
    if (d.output.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(d.output);
        if (!out) throw pc::IoError("cannot write '" + d.output + "'");
        out << csv;
        std::cout << "wrote " << rows.size() << " rows to " << d.output << "\n";
    }
    return 0;
}

int cmd_simulate(const std::string& params_arg, double x0, double dt, long steps,
                 std::uint64_t seed, const std::string& out_path) {
    const pc::PearsonParams params = pc::params_from_json(pc::load_json_argument(params_arg));
    const pc::SampleBatch batch = pc::euler_maruyama(params, x0, dt, steps, seed);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw pc::IoError("cannot write '" + out_path + "'");
        out << "value\n";
        for (double v : batch.values) out << v << "\n";
    }
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    for (double v : batch.values) {
        s1 += v;
        s2 += v * v;
        s3 += v * v * v;
        s4 += v * v * v * v;
    }
    const double n = static_cast<double>(batch.values.size());
    std::cout << "provenance: " << batch.provenance << "\n";
    std::cout << "empirical m1..m4: " << s1 / n << " " << s2 / n << " " << s3 / n << " "
              << s4 / n << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pearson diffusions, Markov chaos grades and four-moment bounds"};
    app.require_subcommand(1);

    std::string params_arg, chaos_arg, descriptor_arg, suite, out_path;
    int pmax = 4, n = 1, trials = 50;
    bool as_float = false, exact_lhs = false;
    double c_h = 1.0, x0 = 0.0, dt = 0.01;
    long steps = 100000;
    std::uint64_t seed = 0;

    auto* moments_cmd = app.add_subcommand("moments", "moments of a Pearson law (exact)");
    moments_cmd->add_option("--params", params_arg, "params JSON (path or inline)")->required();
    moments_cmd->add_option("--pmax", pmax, "largest moment order");
    moments_cmd->add_flag("--float", as_float, "render decimals instead of rationals");

    auto* grade_cmd = app.add_subcommand("grade", "chaos grade of the degree-n eigenfunctions");
    grade_cmd->add_option("--params", params_arg)->required();
    grade_cmd->add_option("--n", n, "eigenfunction degree")->required();
    grade_cmd->add_flag("--float", as_float);

    auto* bound_cmd = app.add_subcommand("bound", "four-moment bound for a chaos element");
    bound_cmd->add_option("--params", params_arg, "target params JSON")->required();
    bound_cmd->add_option("--chaos", chaos_arg, "chaos element JSON (path or inline)")->required();
    bound_cmd->add_option("--c-h", c_h, "Stein constant of the separating class");
    bound_cmd->add_flag("--exact-lhs", exact_lhs, "force the exact LHS computation");

    auto* verify_cmd = app.add_subcommand("verify", "run an exact verification suite");
    verify_cmd->add_option("--suite", suite, "identities|table1|grades|stein")->required();
    verify_cmd->add_option("--seed", seed);
    verify_cmd->add_option("--trials", trials);

    auto* converge_cmd = app.add_subcommand("converge", "run a convergence experiment");
    converge_cmd->add_option("--descriptor", descriptor_arg, "experiment JSON (path or inline)")
        ->required();
    converge_cmd->add_option("--out", out_path, "override the CSV output path");

    auto* simulate_cmd = app.add_subcommand("simulate", "Euler-Maruyama simulation");
    simulate_cmd->add_option("--params", params_arg)->required();
    simulate_cmd->add_option("--x0", x0, "initial point")->required();
    simulate_cmd->add_option("--dt", dt);
    simulate_cmd->add_option("--steps", steps);
    simulate_cmd->add_option("--seed", seed);
    simulate_cmd->add_option("--out", out_path, "CSV of recorded values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? 0 : 2;
    }

    try {
        if (moments_cmd->parsed()) return cmd_moments(params_arg, pmax, as_float);
        if (grade_cmd->parsed()) return cmd_grade(params_arg, n, as_float);
        if (bound_cmd->parsed()) return cmd_bound(params_arg, chaos_arg, c_h, exact_lhs);
        if (verify_cmd->parsed()) return cmd_verify(suite, seed, trials);
        if (converge_cmd->parsed()) return cmd_converge(descriptor_arg, out_path);
        if (simulate_cmd->parsed()) return cmd_simulate(params_arg, x0, dt, steps, seed, out_path);
    } catch (const pc::IoError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const pc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

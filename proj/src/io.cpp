// SPDX-License-Identifier: MIT
#include "pearsonchaos/io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pearsonchaos/errors.hpp"

namespace pearsonchaos {

namespace {

json rat_to_json(const Rat& r) { return json(rat_str(r)); }

Rat rat_from_json(const json& j, const char* field) {
    try {
        if (j.is_string()) return parse_rat(j.get<std::string>());
        if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
        if (j.is_number_float()) return rat_from_double(j.get<double>());
    } catch (const IoError&) {
    }
    throw IoError(std::string("field '") + field + "' is not a rational");
}

json endpoint_to_json(double e) {
    if (std::isinf(e)) return json(e < 0 ? "-inf" : "inf");
    return json(e);
}

double endpoint_from_json(const json& j, const char* field) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        try {
            return to_double(parse_rat(s));
        } catch (const IoError&) {
        }
    }
    if (j.is_number()) return j.get<double>();
    throw IoError(std::string("field '") + field + "' is not a support endpoint");
}

const json& require(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end()) throw IoError(std::string("missing field '") + field + "'");
    return *it;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

json params_to_json(const PearsonParams& params) {
    return json{{"theta", rat_to_json(params.theta)}, {"m", rat_to_json(params.m)},
                {"b0", rat_to_json(params.b0)},       {"b1", rat_to_json(params.b1)},
                {"b2", rat_to_json(params.b2)},       {"support_l", endpoint_to_json(params.support_l)},
                {"support_u", endpoint_to_json(params.support_u)}};
}

PearsonParams params_from_json(const json& j) {
    if (!j.is_object()) throw IoError("params must be a JSON object");
    PearsonParams p;
    p.theta = rat_from_json(require(j, "theta"), "theta");
    p.m = rat_from_json(require(j, "m"), "m");
    p.b0 = rat_from_json(require(j, "b0"), "b0");
    p.b1 = rat_from_json(require(j, "b1"), "b1");
    p.b2 = rat_from_json(require(j, "b2"), "b2");
    if (j.contains("support_l") || j.contains("support_u")) {
        p.support_l = endpoint_from_json(require(j, "support_l"), "support_l");
        p.support_u = endpoint_from_json(require(j, "support_u"), "support_u");
        p.validate();
        return p;
    }
    return PearsonParams::with_natural_support(p.theta, p.m, p.b0, p.b1, p.b2);
}

json class_to_json(const PearsonClass& cls) {
    json law;
    switch (cls.family) {
        case PearsonFamily::Gaussian: {
            const auto& g = std::get<GaussianLaw>(cls.law);
            law = {{"mean", g.mean}, {"sigma2", g.sigma2}};
            break;
        }
        case PearsonFamily::Gamma: {
            const auto& g = std::get<GammaLaw>(cls.law);
            law = {{"alpha", g.alpha}, {"beta", g.beta}};
            break;
        }
        case PearsonFamily::Beta: {
            const auto& g = std::get<BetaLaw>(cls.law);
            law = {{"alpha", g.alpha}, {"beta", g.beta}};
            break;
        }
        case PearsonFamily::SkewT: {
            const auto& g = std::get<SkewTLaw>(cls.law);
            law = {{"shape", g.shape}, {"nu", g.nu}, {"lambda", g.lambda}, {"scale", g.scale}};
            break;
        }
        case PearsonFamily::InverseGamma: {
            const auto& g = std::get<InverseGammaLaw>(cls.law);
            law = {{"alpha", g.alpha}, {"beta", g.beta}};
            break;
        }
        case PearsonFamily::F: {
            const auto& g = std::get<FLaw>(cls.law);
            law = {{"d1", g.d1}, {"d2", g.d2}};
            break;
        }
    }
    return json{{"family", family_name(cls.family)},
                {"parameters", law},
                {"map", {{"scale", cls.map.scale}, {"shift", cls.map.shift}}}};
}

json chaos_element_to_json(const ChaosElement& elem) {
    json coords = json::array();
    for (const auto& c : elem.gen.coords) {
        json jc = params_to_json(c.params);
        jc["generator_theta"] = rat_to_json(c.theta);
        coords.push_back(std::move(jc));
    }
    json terms = json::array();
    for (const auto& t : elem.terms) {
        json alpha = json::array();
        for (unsigned a : t.alpha) alpha.push_back(a);
        terms.push_back(json{{"alpha", std::move(alpha)}, {"a", rat_to_json(t.a)}});
    }
    return json{{"N", elem.gen.dim()},
                {"coords", std::move(coords)},
                {"terms", std::move(terms)},
                {"shift", rat_to_json(elem.shift)}};
}

ChaosElement chaos_element_from_json(const json& j) {
    if (!j.is_object()) throw IoError("chaos element must be a JSON object");
    const int n = require(j, "N").get<int>();
    if (n < 1) throw IoError("N must be >= 1");
    std::vector<GeneratorHandle> coords;
    if (j.contains("coords")) {
        for (const auto& jc : j.at("coords")) {
            PearsonParams p = params_from_json(jc);
            Rat th = jc.contains("generator_theta")
                         ? rat_from_json(jc.at("generator_theta"), "generator_theta")
                         : p.theta;
            coords.push_back(make_generator(std::move(p), std::move(th)));
        }
        if (static_cast<int>(coords.size()) != n) throw IoError("coords length differs from N");
    } else {
        PearsonParams base = params_from_json(require(j, "base"));
        coords.assign(static_cast<std::size_t>(n), make_generator(base));
    }
    std::vector<ChaosTerm> terms;
    for (const auto& jt : require(j, "terms")) {
        ChaosTerm t;
        for (const auto& ja : require(jt, "alpha")) {
            const long v = ja.get<long>();
            if (v < 0) throw IoError("multi-index entries must be nonnegative");
            t.alpha.push_back(static_cast<unsigned>(v));
        }
        t.a = rat_from_json(require(jt, "a"), "a");
        terms.push_back(std::move(t));
    }
    Rat shift = j.contains("shift") ? rat_from_json(j.at("shift"), "shift") : Rat(0);
    return tensor_eigenfunction(tensorize(std::move(coords)), std::move(terms), std::move(shift));
}

json bound_report_to_json(const BoundReport& report) {
    json j{{"eta", rat_to_json(report.eta)},
           {"eta_tilde", rat_to_json(report.eta_tilde)},
           {"xi", rat_to_json(report.xi)},
           {"U_int", rat_to_json(report.U_int)},
           {"Q2_int", rat_to_json(report.Q2_int)},
           {"rhs_sq", rat_to_json(report.rhs_sq)},
           {"regime", to_string(report.regime)},
           {"bound", report.bound},
           {"bound_note", "up to the Stein constant c_H"},
           {"c_H", report.c_H},
           {"theta_rescale", rat_to_json(report.theta_rescale)},
           {"measure", report.measure}};
    if (report.lhs) j["lhs_exact"] = rat_to_json(*report.lhs);
    return j;
}

json experiment_to_json(const ExperimentDescriptor& d) {
    return json{{"target", params_to_json(d.target)},
                {"chaos", {{"family", family_name(d.family)}}},
                {"k_grid", d.k_grid},
                {"mc_n", d.mc_n},
                {"seed", d.seed},
                {"output", d.output}};
}

ExperimentDescriptor experiment_from_json(const json& j) {
    if (!j.is_object()) throw IoError("experiment descriptor must be a JSON object");
    ExperimentDescriptor d;
    d.target = params_from_json(require(j, "target"));
    const json& chaos = require(j, "chaos");
    const auto fam = family_from_name(require(chaos, "family").get<std::string>());
    if (!fam) throw IoError("unknown chaos family");
    d.family = *fam;
    for (const auto& jk : require(j, "k_grid")) d.k_grid.push_back(jk.get<long>());
    d.mc_n = require(j, "mc_n").get<long>();
    d.seed = require(j, "seed").get<std::uint64_t>();
    if (j.contains("output")) d.output = j.at("output").get<std::string>();
    d.validate();
    return d;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream out;
    out << "k,m1,m2,m3,m4,U_value,Q2_value,eta,xi,kolmogorov,bound\n";
    for (const auto& r : rows) {
        out << r.k << ',' << format_double(r.m1) << ',' << format_double(r.m2) << ','
            << format_double(r.m3) << ',' << format_double(r.m4) << ','
            << format_double(r.U_value) << ',' << format_double(r.Q2_value) << ','
            << rat_str(r.eta) << ',' << rat_str(r.xi) << ',' << format_double(r.kolmogorov)
            << ',' << format_double(r.bound) << '\n';
    }
    return out.str();
}

json load_json_argument(const std::string& path_or_inline) {
    try {
        if (!path_or_inline.empty() && path_or_inline.front() == '{')
            return json::parse(path_or_inline);
        std::ifstream in(path_or_inline);
        if (!in) throw IoError("cannot open '" + path_or_inline + "'");
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace pearsonchaos

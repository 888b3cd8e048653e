/*
   Copyright 2026 The ruinkit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "ruinkit/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "overloaded.hpp"
#include "ruinkit/error.hpp"

namespace ruinkit {

using detail::overloaded;
using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw InvalidArgument(where + ": expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw InvalidArgument(where + ": missing field '" + key + "'");
    return *it;
}

double number(const json& obj, const char* key, const std::string& where) {
    const json& value = field(obj, key, where);
    if (!value.is_number()) throw InvalidArgument(where + "." + key + ": expected a number");
    return value.get<double>();
}

std::uint64_t count(const json& value, const std::string& where) {
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    if (value.is_number_integer() && value.get<std::int64_t>() >= 0) return value.get<std::uint64_t>();
    if (value.is_number_float()) {
        const double d = value.get<double>();
        if (d >= 0.0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
    }
    throw InvalidArgument(where + ": expected a non-negative integer");
}

std::string text(const json& obj, const char* key, const std::string& where) {
    const json& value = field(obj, key, where);
    if (!value.is_string()) throw InvalidArgument(where + "." + key + ": expected a string");
    return value.get<std::string>();
}

std::vector<double> numbers(const json& value, const std::string& where) {
    if (!value.is_array()) throw InvalidArgument(where + ": expected an array of numbers");
    std::vector<double> out;
    for (const json& v : value) {
        if (!v.is_number()) throw InvalidArgument(where + ": expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

ClaimDistribution parse_claims(const json& j) {
    const std::string where = "model.claims";
    const std::string family = text(j, "family", where);
    if (family == "exponential") return ClaimDistribution(Exponential{number(j, "rate", where)});
    if (family == "pareto") return ClaimDistribution(Pareto{number(j, "shape", where), number(j, "scale", where)});
    if (family == "gamma") return ClaimDistribution(Gamma{number(j, "shape", where), number(j, "rate", where)});
    throw InvalidArgument(where + ": unknown family '" + family + "'");
}

json claims_to_json(const ClaimDistribution& d) {
    return std::visit(overloaded{
                          [](const Exponential& e) { return json{{"family", "exponential"}, {"rate", e.rate}}; },
                          [](const Pareto& p) {
                              return json{{"family", "pareto"}, {"shape", p.shape}, {"scale", p.scale}};
                          },
                          [](const Gamma& g) { return json{{"family", "gamma"}, {"shape", g.shape}, {"rate", g.rate}}; },
                      },
                      d.law());
}

RateFunction parse_rate(const json& j) {
    const std::string where = "mechanism.rate_function";
    const std::string kind = text(j, "kind", where);
    if (kind == "constant") return RateFunction(ConstantRate{number(j, "level", where)});
    if (kind == "step") {
        return RateFunction(StepRate{numbers(field(j, "breakpoints", where), where + ".breakpoints"),
                                     numbers(field(j, "levels", where), where + ".levels")});
    }
    throw InvalidArgument(where + ": unknown kind '" + kind + "'");
}

json rate_to_json(const RateFunction& r) {
    return std::visit(overloaded{
                          [](const ConstantRate& c) { return json{{"kind", "constant"}, {"level", c.level}}; },
                          [](const StepRate& s) {
                              return json{{"kind", "step"}, {"breakpoints", s.breakpoints}, {"levels", s.levels}};
                          },
                      },
                      r.shape());
}

RescueFunction parse_rescue(const json& j) {
    const std::string where = "mechanism.p";
    const std::string kind = text(j, "kind", where);
    if (kind == "constant") return RescueFunction(ConstantRescue{number(j, "p", where)});
    if (kind == "exp_decay") return RescueFunction(ExponentialDecayRescue{number(j, "kappa", where)});
    if (kind == "table") {
        const json& points = field(j, "points", where);
        if (!points.is_array()) throw InvalidArgument(where + ".points: expected an array of [y, p] pairs");
        TableRescue table;
        for (const json& pt : points) {
            const std::vector<double> pair = numbers(pt, where + ".points");
            if (pair.size() != 2) throw InvalidArgument(where + ".points: expected [y, p] pairs");
            table.points.emplace_back(pair[0], pair[1]);
        }
        return RescueFunction(std::move(table));
    }
    throw InvalidArgument(where + ": unknown kind '" + kind + "'");
}

json rescue_to_json(const RescueFunction& p) {
    return std::visit(overloaded{
                          [](const ConstantRescue& c) { return json{{"kind", "constant"}, {"p", c.p}}; },
                          [](const ExponentialDecayRescue& e) { return json{{"kind", "exp_decay"}, {"kappa", e.kappa}}; },
                          [](const TableRescue& t) {
                              json points = json::array();
                              for (const auto& [y, p] : t.points) points.push_back({y, p});
                              return json{{"kind", "table"}, {"points", points}};
                          },
                      },
                      p.shape());
}

Mechanism parse_mechanism(const json& j) {
    const std::string where = "mechanism";
    const std::string kind = text(j, "kind", where);
    if (kind == "classical") return Mechanism(mechanism::Classical{});
    if (kind == "parisian_fixed") return Mechanism(mechanism::ParisianFixed{number(j, "r", where)});
    if (kind == "parisian_exp") return Mechanism(mechanism::ParisianExponential{number(j, "rate", where)});
    if (kind == "cumulative_parisian_fixed") return Mechanism(mechanism::CumulativeParisianFixed{number(j, "r", where)});
    if (kind == "cumulative_parisian_exp") return Mechanism(mechanism::CumulativeParisianExponential{number(j, "rate", where)});
    if (kind == "omega") return Mechanism(mechanism::Omega{parse_rate(field(j, "rate_function", where))});
    if (kind == "debit_interest") return Mechanism(mechanism::DebitInterest{number(j, "beta", where)});
    if (kind == "investor") return Mechanism(mechanism::Investor{parse_rescue(field(j, "p", where))});
    throw InvalidArgument(where + ": unknown kind '" + kind + "'");
}

json mechanism_to_json(const Mechanism& m) {
    json out{{"kind", m.kind()}};
    std::visit(overloaded{
                   [](const mechanism::Classical&) {},
                   [&out](const mechanism::ParisianFixed& p) { out["r"] = p.r; },
                   [&out](const mechanism::ParisianExponential& p) { out["rate"] = p.rate; },
                   [&out](const mechanism::CumulativeParisianFixed& p) { out["r"] = p.r; },
                   [&out](const mechanism::CumulativeParisianExponential& p) { out["rate"] = p.rate; },
                   [&out](const mechanism::Omega& o) { out["rate_function"] = rate_to_json(o.omega); },
                   [&out](const mechanism::DebitInterest& d) { out["beta"] = d.beta; },
                   [&out](const mechanism::Investor& i) { out["p"] = rescue_to_json(i.p); },
               },
               m.rule());
    return out;
}

SimConfig parse_sim(const json& j) {
    SimConfig cfg;
    if (j.is_null()) return cfg;
    if (!j.is_object()) throw InvalidArgument("sim: expected an object");
    if (j.contains("n_paths")) cfg.n_paths = count(j["n_paths"], "sim.n_paths");
    if (j.contains("seed")) cfg.seed = count(j["seed"], "sim.seed");
    if (j.contains("max_events_per_path")) {
        cfg.max_events_per_path = count(j["max_events_per_path"], "sim.max_events_per_path");
    }
    if (j.contains("workers")) cfg.workers = static_cast<unsigned>(count(j["workers"], "sim.workers"));
    if (j.contains("barrier")) {
        const json& b = j["barrier"];
        const std::string mode = text(b, "mode", "sim.barrier");
        if (mode == "auto") {
            AutoBarrier a;
            if (b.contains("eps_trunc")) a.eps_trunc = number(b, "eps_trunc", "sim.barrier");
            cfg.barrier = a;
        } else if (mode == "fixed") {
            cfg.barrier = FixedBarrier{number(b, "level", "sim.barrier")};
        } else {
            throw InvalidArgument("sim.barrier: unknown mode '" + mode + "'");
        }
    }
    cfg.validate();
    return cfg;
}

json sim_to_json(const SimConfig& cfg) {
    json barrier = std::visit(overloaded{
                                  [](const AutoBarrier& a) { return json{{"mode", "auto"}, {"eps_trunc", a.eps_trunc}}; },
                                  [](const FixedBarrier& f) { return json{{"mode", "fixed"}, {"level", f.level}}; },
                              },
                              cfg.barrier);
    return json{{"n_paths", cfg.n_paths},
                {"seed", cfg.seed},
                {"barrier", barrier},
                {"max_events_per_path", cfg.max_events_per_path},
                {"workers", cfg.workers}};
}

OutputOptions parse_outputs(const json& j) {
    OutputOptions out;
    if (j.is_null()) return out;
    if (!j.is_object()) throw InvalidArgument("outputs: expected an object");
    if (j.contains("x_grid")) {
        out.x_grid = numbers(j["x_grid"], "outputs.x_grid");
        if (out.x_grid.empty()) throw InvalidArgument("outputs.x_grid: must not be empty");
        for (double x : out.x_grid) {
            if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument("outputs.x_grid: values must be finite and >= 0");
        }
    }
    if (j.contains("n_conditional")) out.n_conditional = count(j["n_conditional"], "outputs.n_conditional");
    return out;
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InvalidArgument("scenario: expected a JSON object");

    const json& model_json = field(doc, "model", "scenario");
    ModelParams model(number(model_json, "c", "model"), number(model_json, "lambda", "model"),
                      parse_claims(field(model_json, "claims", "model")));

    std::vector<double> u_grid = numbers(field(doc, "u_grid", "scenario"), "u_grid");
    if (u_grid.empty()) throw InvalidArgument("u_grid: must not be empty");
    for (double u : u_grid) {
        if (!(u >= 0.0) || !std::isfinite(u)) throw InvalidArgument("u_grid: values must be finite and >= 0");
    }
    if (!std::is_sorted(u_grid.begin(), u_grid.end())) throw InvalidArgument("u_grid: must be sorted ascending");

    return Scenario{std::move(model),
                    parse_mechanism(field(doc, "mechanism", "scenario")),
                    std::move(u_grid),
                    parse_sim(doc.contains("sim") ? doc["sim"] : json()),
                    parse_outputs(doc.contains("outputs") ? doc["outputs"] : json())};
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open scenario file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& s) {
    json doc;
    doc["model"] = json{{"c", s.model.c()}, {"lambda", s.model.lambda()}, {"claims", claims_to_json(s.model.claims())}};
    doc["mechanism"] = mechanism_to_json(s.mechanism);
    doc["u_grid"] = s.u_grid;
    doc["sim"] = sim_to_json(s.sim);
    doc["outputs"] = json{{"x_grid", s.outputs.x_grid}, {"n_conditional", s.outputs.n_conditional}};
    return doc.dump(2) + "\n";
}

}  // namespace ruinkit

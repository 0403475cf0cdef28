#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "graphpq/errors.hpp"
#include "graphpq/problem.hpp"
#include <json.hpp>

namespace graphpq {

namespace {

using nlohmann::json;

// Vertex-function specifiers accepted in problem configs:
//   {"constant": c}
//   {"values": {"id": v, ...}}          (every vertex listed)
//   {"indicator": ["a", "b"]}
//   {"preset": "3+dist", "anchor": "a"}
//   {"preset": "dist-combo", "x1": "a", "x2": "b", "c1": 1.0}
VertexFunction parse_vf(const WeightedGraph& g, const json& j,
                        const std::string& name) {
    if (!j.is_object())
        throw config_error("config field \"" + name + "\" must be an object");
    if (j.contains("constant"))
        return constant_function(g, j.at("constant").get<double>());
    if (j.contains("values")) {
        const json& vals = j.at("values");
        VertexFunction u(g.size());
        std::vector<char> set(g.size(), 0);
        for (auto it = vals.begin(); it != vals.end(); ++it) {
            auto x = g.find(it.key());
            if (!x)
                throw config_error("\"" + name + "\" references unknown vertex \"" +
                                   it.key() + "\"");
            u[*x] = it.value().get<double>();
            set[*x] = 1;
        }
        for (int x = 0; x < g.size(); ++x)
            if (!set[x])
                throw config_error("\"" + name + "\" missing vertex \"" +
                                   g.id_of(x) + "\"");
        return u;
    }
    if (j.contains("indicator")) {
        std::vector<int> xs;
        for (const auto& id : j.at("indicator"))
            xs.push_back(g.index_of(id.get<std::string>()));
        return indicator(g, xs);
    }
    if (j.contains("preset")) {
        std::string preset = j.at("preset").get<std::string>();
        if (preset == "3+dist") {
            int anchor = g.index_of(j.at("anchor").get<std::string>());
            auto d = g.distances_from(anchor);
            VertexFunction u(g.size());
            for (int x = 0; x < g.size(); ++x) u[x] = 3.0 + d[x];
            return u;
        }
        if (preset == "dist-combo") {
            int x1 = g.index_of(j.at("x1").get<std::string>());
            int x2 = g.index_of(j.at("x2").get<std::string>());
            double c1 = j.value("c1", 1.0);
            auto d1 = g.distances_from(x1);
            auto d2 = g.distances_from(x2);
            VertexFunction u(g.size());
            for (int x = 0; x < g.size(); ++x)
                u[x] = c1 * d1[x] - 1.0 / (d2[x] + 1.0) + 2.0;
            return u;
        }
        throw config_error("unknown function preset \"" + preset + "\" in \"" +
                           name + "\"");
    }
    throw config_error("\"" + name +
                       "\" needs one of: constant, values, indicator, preset");
}

HypothesisParams parse_hyp(const WeightedGraph& g, const json& j) {
    HypothesisParams hp;
    auto num = [&](const char* k) -> std::optional<double> {
        if (j.contains(k)) return j.at(k).get<double>();
        return std::nullopt;
    };
    auto vf = [&](const char* k) -> std::optional<VertexFunction> {
        if (j.contains(k)) return parse_vf(g, j.at(k), k);
        return std::nullopt;
    };
    auto vtx = [&](const char* k) -> std::optional<int> {
        if (j.contains(k)) return g.index_of(j.at(k).get<std::string>());
        return std::nullopt;
    };
    hp.f1_sup = num("f1_sup");
    hp.f2_sup = num("f2_sup");
    hp.g1 = vf("g1");
    hp.g2 = vf("g2");
    hp.f1_prime = j.value("f1_prime", false);
    hp.beta1 = num("beta1");
    hp.beta2 = num("beta2");
    hp.K1 = vf("K1");
    hp.K2 = vf("K2");
    hp.x1 = vtx("x1");
    hp.x2 = vtx("x2");
    hp.l0 = num("l0");
    hp.l1 = num("l1");
    hp.l2 = num("l2");
    hp.M = num("M");
    hp.x3 = vtx("x3");
    hp.x4 = vtx("x4");
    hp.nu = num("nu");
    hp.A = num("A");
    hp.beta3 = num("beta3");
    hp.K3 = vf("K3");
    hp.b = vf("b");
    if (j.contains("a_table"))
        for (const auto& row : j.at("a_table"))
            hp.a_table.emplace_back(row.at(0).get<double>(),
                                    row.at(1).get<double>());
    if (j.contains("h_levels"))
        for (const auto& v : j.at("h_levels"))
            hp.h_levels.push_back(v.get<double>());
    return hp;
}

ProblemSpec from_top_preset(const WeightedGraph& g, const json& j) {
    std::string name = j.at("name").get<std::string>();
    if (name == "example51")
        return preset_example51(g, j.at("x1").get<std::string>(),
                                j.at("x2").get<std::string>(),
                                j.value("lambda1", 1.0), j.value("lambda2", 1.0));
    if (name == "example52")
        return preset_example52(g, j.at("x1").get<std::string>(),
                                j.at("x2").get<std::string>(),
                                j.at("lambda").get<double>(), j.value("c1", 1.0));
    if (name == "single-equation") {
        Nonlinearity1D f1d;
        const json& jf = j.at("F");
        if (jf.contains("expr")) {
            Nonlinearity nl = expr_nonlinearity(
                jf.at("expr").at("F").get<std::string>(),
                jf.at("expr").at("Fs").get<std::string>(),
                jf.at("expr").value("Ft", "0"));
            f1d.F = [nl](int x, double s) { return nl.F(x, s, 0.0); };
            f1d.Fs = [nl](int x, double s) { return nl.Fs(x, s, 0.0); };
            f1d.provenance = "expr";
        } else if (jf.value("preset", "") == "zero") {
            f1d.F = [](int, double) { return 0.0; };
            f1d.Fs = [](int, double) { return 0.0; };
            f1d.provenance = "zero";
        } else {
            throw config_error("single-equation preset needs F.expr or "
                               "F.preset = \"zero\"");
        }
        return preset_single_equation(g, j.at("p").get<double>(),
                                      parse_vf(g, j.at("h"), "h"),
                                      parse_vf(g, j.at("e"), "e"),
                                      j.at("epsilon").get<double>(), f1d);
    }
    throw config_error("unknown problem preset \"" + name + "\"");
}

Nonlinearity parse_F(const WeightedGraph& g, const json& j,
                     const ProblemSpec& partial) {
    if (j.contains("expr")) {
        const json& e = j.at("expr");
        return expr_nonlinearity(e.at("F").get<std::string>(),
                                 e.at("Fs").get<std::string>(),
                                 e.at("Ft").get<std::string>());
    }
    std::string preset = j.value("preset", "");
    if (preset == "zero") return zero_nonlinearity();
    if (preset == "example51") {
        return preset_example51(g, j.at("x1").get<std::string>(),
                                j.at("x2").get<std::string>(), 1.0, 1.0)
            .F;
    }
    if (preset == "example52") {
        double M;
        if (j.contains("M")) {
            M = j.at("M").get<double>();
        } else {
            int x3 = g.index_of(j.at("x1").get<std::string>());
            M = spike_constants(partial, x3).M_threshold + 1.0;
        }
        Nonlinearity out;
        out.F = [M](int, double s, double t) {
            double w = s * s * s * s + t * t * t * t;
            return M * std::log1p(w) * w;
        };
        out.Fs = [M](int, double s, double t) {
            double w = s * s * s * s + t * t * t * t;
            return 4.0 * M * s * s * s * (w / (1.0 + w) + std::log1p(w));
        };
        out.Ft = [M](int, double s, double t) {
            double w = s * s * s * s + t * t * t * t;
            return 4.0 * M * t * t * t * (w / (1.0 + w) + std::log1p(w));
        };
        out.provenance = "example52";
        return out;
    }
    throw config_error("\"F\" needs an expr block or a known preset");
}

} // namespace

ProblemSpec load_problem_text(const std::string& config_text,
                              const std::string& base_dir) {
    json cfg;
    try {
        cfg = json::parse(config_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("problem config parse error: ") + e.what());
    }

    try {
        WeightedGraph g = [&] {
            if (cfg.contains("graph_inline"))
                return WeightedGraph::from_json_text(cfg.at("graph_inline").dump());
            std::filesystem::path p = cfg.at("graph").get<std::string>();
            if (p.is_relative() && !base_dir.empty())
                p = std::filesystem::path(base_dir) / p;
            return WeightedGraph::from_json_file(p.string());
        }();

        if (cfg.contains("preset")) {
            ProblemSpec spec = from_top_preset(g, cfg.at("preset"));
            if (cfg.contains("hypothesis"))
                spec.hyp = parse_hyp(g, cfg.at("hypothesis"));
            return spec;
        }

        ProblemSpec spec;
        spec.graph = g;
        spec.p = cfg.at("p").get<double>();
        spec.q = cfg.at("q").get<double>();
        spec.h1 = parse_vf(g, cfg.at("h1"), "h1");
        spec.h2 = parse_vf(g, cfg.at("h2"), "h2");
        spec.e1 = parse_vf(g, cfg.at("e1"), "e1");
        spec.e2 = parse_vf(g, cfg.at("e2"), "e2");
        spec.lambda1 = cfg.at("lambda1").get<double>();
        spec.lambda2 = cfg.at("lambda2").get<double>();
        spec.h0 = cfg.value("h0", 0.0);
        spec.F = parse_F(g, cfg.at("F"), spec);
        if (cfg.contains("hypothesis"))
            spec.hyp = parse_hyp(g, cfg.at("hypothesis"));
        finalize_spec(spec);
        return spec;
    } catch (const json::exception& e) {
        throw config_error(std::string("problem config structure error: ") +
                           e.what());
    }
}

ProblemSpec load_problem(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in)
        throw config_error("cannot open problem config \"" + config_path + "\"");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_problem_text(
        ss.str(), std::filesystem::path(config_path).parent_path().string());
}

} // namespace graphpq

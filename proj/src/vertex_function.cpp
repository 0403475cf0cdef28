#include "graphpq/vertex_function.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "graphpq/errors.hpp"
#include <json.hpp>

namespace graphpq {

bool VertexFunction::finite() const {
    for (double x : values)
        if (!std::isfinite(x)) return false;
    return true;
}

VertexFunction constant_function(const WeightedGraph& g, double c) {
    return VertexFunction(g.size(), c);
}

VertexFunction indicator(const WeightedGraph& g, int x) {
    VertexFunction u(g.size());
    u[x] = 1.0;
    return u;
}

VertexFunction indicator(const WeightedGraph& g, const std::vector<int>& xs) {
    VertexFunction u(g.size());
    for (int x : xs) u[x] = 1.0;
    return u;
}

void require_on_graph(const WeightedGraph& g, const VertexFunction& u,
                      const char* name) {
    if (u.size() != g.size())
        throw std::invalid_argument(std::string(name) + " has " +
                                    std::to_string(u.size()) +
                                    " entries but the graph has " +
                                    std::to_string(g.size()) + " vertices");
    if (!u.finite())
        throw std::invalid_argument(std::string(name) +
                                    " has a non-finite entry");
}

std::string format_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double x = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw config_error("bad numeric literal \"" + s + "\"");
    return x;
}

std::string vf_to_json_text(const WeightedGraph& g, const VertexFunction& u) {
    require_on_graph(g, u, "function");
    nlohmann::json j = nlohmann::json::object();
    for (int x = 0; x < g.size(); ++x) j[g.id_of(x)] = u[x];
    return j.dump();
}

VertexFunction vf_from_json_text(const WeightedGraph& g, const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("function JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw config_error("function JSON must be an object");
    VertexFunction u(g.size());
    std::vector<char> set(g.size(), 0);
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto x = g.find(it.key());
        if (!x) throw config_error("function references unknown vertex \"" +
                                   it.key() + "\"");
        u[*x] = it.value().get<double>();
        set[*x] = 1;
    }
    for (int x = 0; x < g.size(); ++x)
        if (!set[x])
            throw config_error("function missing vertex \"" + g.id_of(x) + "\"");
    return u;
}

std::string vf_to_csv_text(const WeightedGraph& g, const VertexFunction& u) {
    require_on_graph(g, u, "function");
    std::string out = "id,value\n";
    for (int x = 0; x < g.size(); ++x)
        out += g.id_of(x) + "," + format_double(u[x]) + "\n";
    return out;
}

VertexFunction vf_from_csv_text(const WeightedGraph& g, const std::string& text) {
    VertexFunction u(g.size());
    std::vector<char> set(g.size(), 0);
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first && line == "id,value") {
            first = false;
            continue;
        }
        first = false;
        auto comma = line.rfind(',');
        if (comma == std::string::npos)
            throw config_error("bad CSV line \"" + line + "\"");
        std::string id = line.substr(0, comma);
        auto x = g.find(id);
        if (!x) throw config_error("function references unknown vertex \"" + id + "\"");
        u[*x] = parse_double(line.substr(comma + 1));
        set[*x] = 1;
    }
    for (int x = 0; x < g.size(); ++x)
        if (!set[x])
            throw config_error("function missing vertex \"" + g.id_of(x) + "\"");
    return u;
}

} // namespace graphpq

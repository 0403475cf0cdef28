#include "graphpq/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "graphpq/errors.hpp"
#include <json.hpp>

namespace graphpq {

namespace {

std::string fmt_edge(const std::string& u, const std::string& v) {
    return "{" + u + "," + v + "}";
}

} // namespace

ValidationReport validate(const GraphData& data) {
    ValidationReport rep;
    if (data.vertices.empty()) {
        rep.violations.push_back("empty vertex set");
        return rep;
    }

    std::unordered_map<std::string, int> index;
    for (const auto& v : data.vertices) {
        if (!index.emplace(v.id, static_cast<int>(index.size())).second)
            rep.violations.push_back("duplicate vertex id \"" + v.id + "\"");
        if (!(v.mu > 0.0))
            rep.violations.push_back("nonpositive measure mu(" + v.id + ") = " +
                                     std::to_string(v.mu));
    }

    // Weights are stored once per unordered pair; a pair listed twice with
    // differing weights is an asymmetric weight, with equal weights a
    // duplicate edge. Both are rejected.
    std::map<std::pair<int, int>, double> seen;
    for (const auto& e : data.edges) {
        auto iu = index.find(e.u);
        auto iv = index.find(e.v);
        if (iu == index.end()) {
            rep.violations.push_back("edge endpoint \"" + e.u + "\" is not a vertex");
            continue;
        }
        if (iv == index.end()) {
            rep.violations.push_back("edge endpoint \"" + e.v + "\" is not a vertex");
            continue;
        }
        if (iu->second == iv->second) {
            rep.violations.push_back("self-loop at \"" + e.u + "\"");
            continue;
        }
        if (!(e.w > 0.0))
            rep.violations.push_back("nonpositive weight on edge " + fmt_edge(e.u, e.v));
        auto key = std::minmax(iu->second, iv->second);
        auto [it, fresh] = seen.emplace(std::make_pair(key.first, key.second), e.w);
        if (!fresh) {
            if (it->second != e.w)
                rep.violations.push_back("asymmetric weight on edge " + fmt_edge(e.u, e.v));
            else
                rep.violations.push_back("duplicate edge " + fmt_edge(e.u, e.v));
        }
    }

    if (!rep.violations.empty()) return rep;

    // Connectivity: BFS from vertex 0 over the accepted edges.
    const int n = static_cast<int>(data.vertices.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto& [key, w] : seen) {
        adj[key.first].push_back(key.second);
        adj[key.second].push_back(key.first);
    }
    std::vector<char> reached(n, 0);
    std::deque<int> queue{0};
    reached[0] = 1;
    int count = 1;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int y : adj[x])
            if (!reached[y]) {
                reached[y] = 1;
                ++count;
                queue.push_back(y);
            }
    }
    if (count != n) rep.violations.push_back("disconnected");
    return rep;
}

WeightedGraph WeightedGraph::build(const GraphData& data) {
    ValidationReport rep = validate(data);
    if (!rep.valid()) {
        std::string msg = "invalid graph:";
        for (const auto& v : rep.violations) msg += "\n  - " + v;
        throw validation_error(msg);
    }

    WeightedGraph g;
    g.ids_.reserve(data.vertices.size());
    g.mu_.reserve(data.vertices.size());
    for (const auto& v : data.vertices) {
        g.index_.emplace(v.id, static_cast<int>(g.ids_.size()));
        g.ids_.push_back(v.id);
        g.mu_.push_back(v.mu);
    }
    g.adj_.resize(g.ids_.size());
    for (const auto& e : data.edges) {
        int u = g.index_.at(e.u);
        int v = g.index_.at(e.v);
        g.edges_.push_back({u, v, e.w});
        g.adj_[u].push_back({v, e.w});
        g.adj_[v].push_back({u, e.w});
    }
    for (auto& nbrs : g.adj_)
        std::sort(nbrs.begin(), nbrs.end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
    g.mu0_ = *std::min_element(g.mu_.begin(), g.mu_.end());
    g.mu_max_ = *std::max_element(g.mu_.begin(), g.mu_.end());
    return g;
}

int WeightedGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw std::invalid_argument("unknown vertex id \"" + id + "\"");
    return it->second;
}

std::optional<int> WeightedGraph::find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void WeightedGraph::check_vertex(int x) const {
    if (x < 0 || x >= size())
        throw std::invalid_argument("vertex index " + std::to_string(x) +
                                    " out of range");
}

double WeightedGraph::degree(int x) const {
    check_vertex(x);
    double d = 0.0;
    for (const auto& nb : adj_[x]) d += nb.w;
    return d;
}

int WeightedGraph::dist(int x, int y) const {
    check_vertex(x);
    check_vertex(y);
    if (x == y) return 0;
    std::vector<int> d(size(), -1);
    std::deque<int> queue{x};
    d[x] = 0;
    while (!queue.empty()) {
        int z = queue.front();
        queue.pop_front();
        for (const auto& nb : adj_[z])
            if (d[nb.to] < 0) {
                d[nb.to] = d[z] + 1;
                if (nb.to == y) return d[nb.to];
                queue.push_back(nb.to);
            }
    }
    throw validation_error("vertices \"" + ids_[x] + "\" and \"" + ids_[y] +
                           "\" are not connected");
}

std::vector<int> WeightedGraph::distances_from(int x) const {
    check_vertex(x);
    std::vector<int> d(size(), -1);
    std::deque<int> queue{x};
    d[x] = 0;
    while (!queue.empty()) {
        int z = queue.front();
        queue.pop_front();
        for (const auto& nb : adj_[z])
            if (d[nb.to] < 0) {
                d[nb.to] = d[z] + 1;
                queue.push_back(nb.to);
            }
    }
    return d;
}

int WeightedGraph::diameter() const {
    int diam = 0;
    for (int x = 0; x < size(); ++x)
        for (int d : distances_from(x)) diam = std::max(diam, d);
    return diam;
}

WeightedGraph WeightedGraph::ball_truncate(int x0, int radius) const {
    check_vertex(x0);
    if (radius < 0) throw std::invalid_argument("negative truncation radius");

    std::vector<int> d(size(), -1);
    std::deque<int> queue{x0};
    d[x0] = 0;
    while (!queue.empty()) {
        int z = queue.front();
        queue.pop_front();
        if (d[z] == radius) continue;
        for (const auto& nb : adj_[z])
            if (d[nb.to] < 0) {
                d[nb.to] = d[z] + 1;
                queue.push_back(nb.to);
            }
    }

    GraphData data;
    for (int x = 0; x < size(); ++x)
        if (d[x] >= 0) data.vertices.push_back({ids_[x], mu_[x]});
    for (const auto& e : edges_)
        if (d[e.u] >= 0 && d[e.v] >= 0)
            data.edges.push_back({ids_[e.u], ids_[e.v], e.w});
    return build(data);
}

GraphData WeightedGraph::data() const {
    GraphData out;
    for (int x = 0; x < size(); ++x) out.vertices.push_back({ids_[x], mu_[x]});
    for (const auto& e : edges_) out.edges.push_back({ids_[e.u], ids_[e.v], e.w});
    return out;
}

GraphData graph_data_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("graph JSON parse error: ") + e.what());
    }
    GraphData data;
    try {
        for (const auto& v : j.at("vertices"))
            data.vertices.push_back({v.at("id").get<std::string>(),
                                     v.at("mu").get<double>()});
        for (const auto& e : j.value("edges", nlohmann::json::array()))
            data.edges.push_back({e.at("u").get<std::string>(),
                                  e.at("v").get<std::string>(),
                                  e.at("w").get<double>()});
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("graph JSON structure error: ") + e.what());
    }
    return data;
}

WeightedGraph WeightedGraph::from_json_text(const std::string& text) {
    return build(graph_data_from_json_text(text));
}

WeightedGraph WeightedGraph::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open graph file \"" + path + "\"");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string WeightedGraph::to_json_text() const {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (int x = 0; x < size(); ++x)
        j["vertices"].push_back({{"id", ids_[x]}, {"mu", mu_[x]}});
    j["edges"] = nlohmann::json::array();
    for (const auto& e : edges_)
        j["edges"].push_back({{"u", ids_[e.u]}, {"v", ids_[e.v]}, {"w", e.w}});
    return j.dump(2);
}

} // namespace graphpq

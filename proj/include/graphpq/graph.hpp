#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace graphpq {

// Raw, pre-validation form of a graph as it appears in an input file.
struct GraphData {
    struct Vertex {
        std::string id;
        double mu = 1.0;
    };
    struct Edge {
        std::string u, v;
        double w = 1.0;
    };
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool valid() const { return violations.empty(); }
};

// Checks the standing assumptions: positive symmetric weights, positive
// vertex measure, no self-loops or duplicate edges, connectivity.
// Violations are report entries, not failures.
ValidationReport validate(const GraphData& data);

// Finite weighted graph with vertex measure mu and symmetric edge
// weights. Vertices carry opaque string ids mapped to dense indices at
// construction; all numerics use the dense index. Immutable once built,
// safe to share across concurrent readers.
class WeightedGraph {
public:
    struct Edge {
        int u, v;
        double w;
    };
    struct Neighbor {
        int to;
        double w;
    };

    // Throws validation_error listing every violated invariant.
    static WeightedGraph build(const GraphData& data);
    static WeightedGraph from_json_text(const std::string& text);
    static WeightedGraph from_json_file(const std::string& path);

    int size() const { return static_cast<int>(mu_.size()); }
    const std::string& id_of(int x) const { return ids_[x]; }
    // Throws std::invalid_argument for unknown ids.
    int index_of(const std::string& id) const;
    std::optional<int> find(const std::string& id) const;

    double mu(int x) const { return mu_[x]; }
    double mu0() const { return mu0_; }
    double mu_max() const { return mu_max_; }

    const std::vector<Neighbor>& neighbors(int x) const { return adj_[x]; }
    const std::vector<Edge>& edges() const { return edges_; }

    // deg(x) = sum of incident edge weights.
    double degree(int x) const;
    // Hop distance (minimal number of edges); BFS.
    int dist(int x, int y) const;
    // Hop distances from x to every vertex in one sweep.
    std::vector<int> distances_from(int x) const;
    int diameter() const;
    // Induced subgraph on { y : dist(y, x0) <= radius }, with mu and the
    // weights restricted. Returns a new graph; the result revalidates.
    WeightedGraph ball_truncate(int x0, int radius) const;

    GraphData data() const;
    std::string to_json_text() const;

private:
    WeightedGraph() = default;
    void check_vertex(int x) const;

    std::vector<std::string> ids_;
    std::unordered_map<std::string, int> index_;
    std::vector<double> mu_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Neighbor>> adj_;
    double mu0_ = 0.0;
    double mu_max_ = 0.0;
};

GraphData graph_data_from_json_text(const std::string& text);

} // namespace graphpq

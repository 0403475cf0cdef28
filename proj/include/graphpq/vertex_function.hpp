#pragma once

#include <string>
#include <vector>

#include "graphpq/graph.hpp"

namespace graphpq {

// A real function u : V -> R stored densely by vertex index.
struct VertexFunction {
    std::vector<double> values;

    VertexFunction() = default;
    explicit VertexFunction(int n, double fill = 0.0) : values(n, fill) {}

    int size() const { return static_cast<int>(values.size()); }
    double& operator[](int x) { return values[x]; }
    double operator[](int x) const { return values[x]; }

    bool finite() const;
};

VertexFunction constant_function(const WeightedGraph& g, double c);
// 1 at x, 0 elsewhere (the spike used for endpoints and probe directions).
VertexFunction indicator(const WeightedGraph& g, int x);
VertexFunction indicator(const WeightedGraph& g, const std::vector<int>& xs);

// Throws std::invalid_argument when the function does not live on g or has
// non-finite entries.
void require_on_graph(const WeightedGraph& g, const VertexFunction& u,
                      const char* name);

// Serialization. JSON is an object {"id": value, ...}; CSV is "id,value"
// lines with an "id,value" header. Both round-trip bit-exactly (shortest
// decimal representation).
std::string vf_to_json_text(const WeightedGraph& g, const VertexFunction& u);
VertexFunction vf_from_json_text(const WeightedGraph& g, const std::string& text);
std::string vf_to_csv_text(const WeightedGraph& g, const VertexFunction& u);
VertexFunction vf_from_csv_text(const WeightedGraph& g, const std::string& text);

std::string format_double(double x);
double parse_double(const std::string& s);

} // namespace graphpq

#include "graphpq/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "graphpq/util.hpp"

namespace graphpq {

double gamma_form(const WeightedGraph& g, const VertexFunction& u,
                  const VertexFunction& v, int x) {
    require_on_graph(g, u, "u");
    require_on_graph(g, v, "v");
    if (x < 0 || x >= g.size())
        throw std::invalid_argument("vertex index out of range");
    double s = 0.0;
    for (const auto& nb : g.neighbors(x))
        s += nb.w * (u[nb.to] - u[x]) * (v[nb.to] - v[x]);
    return s / (2.0 * g.mu(x));
}

double grad_len(const WeightedGraph& g, const VertexFunction& u, int x) {
    return std::sqrt(gamma_form(g, u, u, x));
}

std::vector<double> grad_len_all(const WeightedGraph& g, const VertexFunction& u) {
    require_on_graph(g, u, "u");
    std::vector<double> out(g.size());
    for (int x = 0; x < g.size(); ++x) {
        double s = 0.0;
        for (const auto& nb : g.neighbors(x)) {
            double d = u[nb.to] - u[x];
            s += nb.w * d * d;
        }
        out[x] = std::sqrt(s / (2.0 * g.mu(x)));
    }
    return out;
}

double laplacian(const WeightedGraph& g, const VertexFunction& u, int x) {
    require_on_graph(g, u, "u");
    double s = 0.0;
    for (const auto& nb : g.neighbors(x)) s += nb.w * (u[nb.to] - u[x]);
    return s / g.mu(x);
}

double p_laplacian(const WeightedGraph& g, const VertexFunction& u, double p,
                   int x, const std::vector<double>& grad) {
    if (p < 2.0)
        throw std::invalid_argument("p_laplacian requires p >= 2, got p = " +
                                    std::to_string(p));
    double s = 0.0;
    for (const auto& nb : g.neighbors(x))
        s += (grad_coeff(grad[nb.to], p) + grad_coeff(grad[x], p)) * nb.w *
             (u[nb.to] - u[x]);
    return s / (2.0 * g.mu(x));
}

double p_laplacian(const WeightedGraph& g, const VertexFunction& u, double p,
                   int x) {
    require_on_graph(g, u, "u");
    if (x < 0 || x >= g.size())
        throw std::invalid_argument("vertex index out of range");
    return p_laplacian(g, u, p, x, grad_len_all(g, u));
}

double integrate(const WeightedGraph& g, const VertexFunction& f) {
    require_on_graph(g, f, "f");
    std::vector<double> terms(g.size());
    for (int x = 0; x < g.size(); ++x) terms[x] = f[x] * g.mu(x);
    return pairwise_sum(terms);
}

double lp_norm(const WeightedGraph& g, const VertexFunction& u, double r) {
    require_on_graph(g, u, "u");
    if (std::isinf(r)) {
        double m = 0.0;
        for (int x = 0; x < g.size(); ++x) m = std::max(m, std::fabs(u[x]));
        return m;
    }
    if (!(r > 1.0))
        throw std::invalid_argument("lp_norm requires r > 1 or r = inf");
    std::vector<double> terms(g.size());
    for (int x = 0; x < g.size(); ++x)
        terms[x] = std::pow(std::fabs(u[x]), r) * g.mu(x);
    return std::pow(pairwise_sum(terms), 1.0 / r);
}

double sobolev_norm(const WeightedGraph& g, const VertexFunction& u, double s,
                    const VertexFunction& h) {
    require_on_graph(g, u, "u");
    require_on_graph(g, h, "h");
    if (!(s > 1.0)) throw std::invalid_argument("sobolev_norm requires s > 1");
    for (int x = 0; x < g.size(); ++x)
        if (!(h[x] > 0.0))
            throw std::invalid_argument("nonpositive potential h(" +
                                        g.id_of(x) + ")");
    std::vector<double> grad = grad_len_all(g, u);
    std::vector<double> terms(g.size());
    for (int x = 0; x < g.size(); ++x)
        terms[x] = (std::pow(grad[x], s) + h[x] * std::pow(std::fabs(u[x]), s)) *
                   g.mu(x);
    return std::pow(pairwise_sum(terms), 1.0 / s);
}

double embedding_constant(EmbeddingKind kind, double s, double r, double h0,
                          double mu0) {
    if (!(s > 1.0)) throw std::invalid_argument("embedding requires s > 1");
    if (!(h0 > 0.0) || !(mu0 > 0.0))
        throw std::invalid_argument("embedding requires h0 > 0 and mu0 > 0");
    if (kind == EmbeddingKind::sup)
        return std::pow(h0 * mu0, -1.0 / s);
    if (!(r >= s)) throw std::invalid_argument("embedding requires r >= s");
    return std::pow(mu0, (s - r) / (s * r)) * std::pow(h0, -1.0 / s);
}

EmbeddingCheck check_embedding(const WeightedGraph& g, const VertexFunction& u,
                               double s, double r, const VertexFunction& h) {
    double h0 = h.values.empty()
                    ? 0.0
                    : *std::min_element(h.values.begin(), h.values.end());
    double c = std::isinf(r)
                   ? embedding_constant(EmbeddingKind::sup, s, r, h0, g.mu0())
                   : embedding_constant(EmbeddingKind::lr, s, r, h0, g.mu0());
    EmbeddingCheck out;
    out.lhs = lp_norm(g, u, r);
    out.rhs = c * sobolev_norm(g, u, s, h);
    out.holds = out.lhs <= out.rhs + 1e-12;
    return out;
}

} // namespace graphpq

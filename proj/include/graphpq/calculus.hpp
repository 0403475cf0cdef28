#pragma once

#include "graphpq/graph.hpp"
#include "graphpq/vertex_function.hpp"

namespace graphpq {

// Discrete calculus on a finite weighted graph.
//
//   Gamma(u,v)(x) = (1/2mu(x)) sum_{y~x} w_xy (u(y)-u(x)) (v(y)-v(x))
//   |grad u|(x)   = sqrt(Gamma(u,u)(x))
//   Delta u(x)    = (1/mu(x))  sum_{y~x} w_xy (u(y)-u(x))
//   Delta_p u(x)  = (1/2mu(x)) sum_{y~x} (|grad u|^{p-2}(y)+|grad u|^{p-2}(x))
//                                         w_xy (u(y)-u(x))
//   int_V f dmu   = sum_x f(x) mu(x)
//
// |grad u|^0 is 1 everywhere (including zero-gradient vertices), so
// Delta_2 coincides with Delta exactly. p in (1,2) is rejected: every
// solver path assumes p >= 2 and |grad u|^{p-2} would be singular.

double gamma_form(const WeightedGraph& g, const VertexFunction& u,
                  const VertexFunction& v, int x);
double grad_len(const WeightedGraph& g, const VertexFunction& u, int x);
std::vector<double> grad_len_all(const WeightedGraph& g, const VertexFunction& u);

double laplacian(const WeightedGraph& g, const VertexFunction& u, int x);
double p_laplacian(const WeightedGraph& g, const VertexFunction& u, double p,
                   int x);
// Same, with |grad u| precomputed for all vertices (hot path).
double p_laplacian(const WeightedGraph& g, const VertexFunction& u, double p,
                   int x, const std::vector<double>& grad);

double integrate(const WeightedGraph& g, const VertexFunction& f);

// L^r norm for r in (1, inf]; pass r = infinity for the sup norm.
double lp_norm(const WeightedGraph& g, const VertexFunction& u, double r);

// W_h^{1,s} norm (int |grad u|^s + h |u|^s dmu)^{1/s}; h must be strictly
// positive everywhere.
double sobolev_norm(const WeightedGraph& g, const VertexFunction& u, double s,
                    const VertexFunction& h);

enum class EmbeddingKind { sup, lr };

// Embedding constants of W_h^{1,s} into L^inf and L^r:
//   ||u||_inf  <= (h0 mu0)^{-1/s} ||u||
//   ||u||_L^r  <= mu0^{(s-r)/(sr)} h0^{-1/s} ||u||   (s <= r < inf)
double embedding_constant(EmbeddingKind kind, double s, double r, double h0,
                          double mu0);

struct EmbeddingCheck {
    double lhs, rhs;
    bool holds;
};

EmbeddingCheck check_embedding(const WeightedGraph& g, const VertexFunction& u,
                               double s, double r, const VertexFunction& h);

} // namespace graphpq

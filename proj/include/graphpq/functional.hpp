#pragma once

#include <cstdint>

#include "graphpq/problem.hpp"

namespace graphpq {

// A candidate solution pair (u, v) on the spec's graph.
struct State {
    VertexFunction u, v;
};

State zero_state(const ProblemSpec& spec);

// Energy of the coupled system:
//   E(u,v) = (1/p) int (|grad u|^p + h1 |u|^p)
//          + (1/q) int (|grad v|^q + h2 |v|^q)
//          - int F(x,u,v) - lambda1 int e1 u - lambda2 int e2 v.
double energy(const ProblemSpec& spec, const State& state);

// Directional derivative of the energy at `state` along `dir`:
//   int [ |grad u|^{p-2} Gamma(u,d_u) + h1 |u|^{p-2} u d_u
//         - F_s d_u - lambda1 e1 d_u ] dmu  + (v channel analogue).
double d_energy(const ProblemSpec& spec, const State& state, const State& dir);

// Vertex-wise gradient representation in the mu-weighted pairing:
//   g_u(x) = mu(x) [ -Delta_p u + h1 |u|^{p-2} u - F_s - lambda1 e1 ](x),
// so that d_energy(state, d) = sum_x g_u d_u + g_v d_v for every d.
State gradient(const ProblemSpec& spec, const State& state);

struct Residual {
    VertexFunction r_u, r_v;
    double sup; // max over both channels and all vertices of |r|
};

// Pointwise equation residual; r_u(x) mu(x) equals the gradient exactly,
// so sup == 0 iff the state is a critical point.
Residual residual(const ProblemSpec& spec, const State& state);

struct FdCheckResult {
    double max_rel_err;
    double step_used;
};

// Central finite-difference consistency check of d_energy against the
// energy, over n random unit directions:
//   max |d_energy - (E(x+eps d) - E(x-eps d))/(2 eps)| / (1 + |d_energy|).
FdCheckResult fd_check(const ProblemSpec& spec, const State& state,
                       int n_directions, double step = 1e-6,
                       uint64_t seed = 0x5eedf00d);

// Channel norms ||u||_{W_h^{1,p}}, ||v||_{W_h^{1,q}} and their sum, the
// W-norm used by the solvers.
double w_norm_u(const ProblemSpec& spec, const VertexFunction& u);
double w_norm_v(const ProblemSpec& spec, const VertexFunction& v);
double w_norm(const ProblemSpec& spec, const State& state);

} // namespace graphpq

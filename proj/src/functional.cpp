#include "graphpq/functional.hpp"

#include <cmath>
#include <random>

#include "graphpq/calculus.hpp"
#include "graphpq/errors.hpp"
#include "graphpq/util.hpp"

namespace graphpq {

State zero_state(const ProblemSpec& spec) {
    return {VertexFunction(spec.graph.size()), VertexFunction(spec.graph.size())};
}

namespace {

void require_state(const ProblemSpec& spec, const State& st) {
    require_on_graph(spec.graph, st.u, "u");
    require_on_graph(spec.graph, st.v, "v");
}

double check_F(const ProblemSpec& spec, int x, double val) {
    if (!std::isfinite(val))
        throw validation_error("nonlinearity evaluated non-finite at vertex \"" +
                               spec.graph.id_of(x) + "\"");
    return val;
}

} // namespace

double energy(const ProblemSpec& spec, const State& state) {
    require_state(spec, state);
    const WeightedGraph& g = spec.graph;
    std::vector<double> gu = grad_len_all(g, state.u);
    std::vector<double> gv = grad_len_all(g, state.v);
    std::vector<double> terms(g.size());
    for (int x = 0; x < g.size(); ++x) {
        double u = state.u[x], v = state.v[x];
        double t = std::pow(gu[x], spec.p) / spec.p +
                   spec.h1[x] * std::pow(std::fabs(u), spec.p) / spec.p +
                   std::pow(gv[x], spec.q) / spec.q +
                   spec.h2[x] * std::pow(std::fabs(v), spec.q) / spec.q;
        t -= check_F(spec, x, spec.F.F(x, u, v));
        t -= spec.lambda1 * spec.e1[x] * u + spec.lambda2 * spec.e2[x] * v;
        terms[x] = t * g.mu(x);
    }
    return pairwise_sum(terms);
}

double d_energy(const ProblemSpec& spec, const State& state, const State& dir) {
    require_state(spec, state);
    require_state(spec, dir);
    const WeightedGraph& g = spec.graph;
    std::vector<double> gu = grad_len_all(g, state.u);
    std::vector<double> gv = grad_len_all(g, state.v);
    std::vector<double> terms(g.size());
    for (int x = 0; x < g.size(); ++x) {
        double u = state.u[x], v = state.v[x];
        double du = dir.u[x], dv = dir.v[x];
        double t = grad_coeff(gu[x], spec.p) * gamma_form(g, state.u, dir.u, x) +
                   spec.h1[x] * abs_pow_times(u, spec.p) * du -
                   check_F(spec, x, spec.F.Fs(x, u, v)) * du -
                   spec.lambda1 * spec.e1[x] * du;
        t += grad_coeff(gv[x], spec.q) * gamma_form(g, state.v, dir.v, x) +
             spec.h2[x] * abs_pow_times(v, spec.q) * dv -
             check_F(spec, x, spec.F.Ft(x, u, v)) * dv -
             spec.lambda2 * spec.e2[x] * dv;
        terms[x] = t * g.mu(x);
    }
    return pairwise_sum(terms);
}

Residual residual(const ProblemSpec& spec, const State& state) {
    require_state(spec, state);
    const WeightedGraph& g = spec.graph;
    std::vector<double> gu = grad_len_all(g, state.u);
    std::vector<double> gv = grad_len_all(g, state.v);
    Residual out;
    out.r_u = VertexFunction(g.size());
    out.r_v = VertexFunction(g.size());
    out.sup = 0.0;
    for (int x = 0; x < g.size(); ++x) {
        double u = state.u[x], v = state.v[x];
        out.r_u[x] = -p_laplacian(g, state.u, spec.p, x, gu) +
                     spec.h1[x] * abs_pow_times(u, spec.p) -
                     check_F(spec, x, spec.F.Fs(x, u, v)) -
                     spec.lambda1 * spec.e1[x];
        out.r_v[x] = -p_laplacian(g, state.v, spec.q, x, gv) +
                     spec.h2[x] * abs_pow_times(v, spec.q) -
                     check_F(spec, x, spec.F.Ft(x, u, v)) -
                     spec.lambda2 * spec.e2[x];
        out.sup = std::max({out.sup, std::fabs(out.r_u[x]), std::fabs(out.r_v[x])});
    }
    return out;
}

State gradient(const ProblemSpec& spec, const State& state) {
    Residual r = residual(spec, state);
    State g{std::move(r.r_u), std::move(r.r_v)};
    for (int x = 0; x < spec.graph.size(); ++x) {
        g.u[x] *= spec.graph.mu(x);
        g.v[x] *= spec.graph.mu(x);
    }
    return g;
}

FdCheckResult fd_check(const ProblemSpec& spec, const State& state,
                       int n_directions, double step, uint64_t seed) {
    require_state(spec, state);
    if (!(step > 0.0)) throw std::invalid_argument("fd step must be positive");
    const int n = spec.graph.size();

    double e0 = energy(spec, state);
    double eps = step;
    if (std::fabs(e0) > 1e6) eps = std::max(eps, 1e-4); // roundoff floor

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    FdCheckResult out{0.0, eps};
    for (int k = 0; k < n_directions; ++k) {
        State dir{VertexFunction(n), VertexFunction(n)};
        double norm2 = 0.0;
        for (int x = 0; x < n; ++x) {
            dir.u[x] = uni(rng);
            dir.v[x] = uni(rng);
            norm2 += dir.u[x] * dir.u[x] + dir.v[x] * dir.v[x];
        }
        double inv = 1.0 / std::sqrt(norm2);
        State plus = state, minus = state;
        for (int x = 0; x < n; ++x) {
            dir.u[x] *= inv;
            dir.v[x] *= inv;
            plus.u[x] += eps * dir.u[x];
            plus.v[x] += eps * dir.v[x];
            minus.u[x] -= eps * dir.u[x];
            minus.v[x] -= eps * dir.v[x];
        }
        double fd = (energy(spec, plus) - energy(spec, minus)) / (2.0 * eps);
        double de = d_energy(spec, state, dir);
        double rel = std::fabs(de - fd) / (1.0 + std::fabs(de));
        out.max_rel_err = std::max(out.max_rel_err, rel);
    }
    return out;
}

double w_norm_u(const ProblemSpec& spec, const VertexFunction& u) {
    return sobolev_norm(spec.graph, u, spec.p, spec.h1);
}

double w_norm_v(const ProblemSpec& spec, const VertexFunction& v) {
    return sobolev_norm(spec.graph, v, spec.q, spec.h2);
}

double w_norm(const ProblemSpec& spec, const State& state) {
    return w_norm_u(spec, state.u) + w_norm_v(spec, state.v);
}

} // namespace graphpq

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphpq/graph.hpp"
#include "graphpq/vertex_function.hpp"

namespace graphpq {

// Coupling term F(x,s,t) with its partial derivatives, evaluated per
// vertex (dense index). Derivatives are supplied, never derived
// symbolically; fd_check catches inconsistent pairs.
struct Nonlinearity {
    std::function<double(int, double, double)> F, Fs, Ft;
    std::string provenance;
};

Nonlinearity zero_nonlinearity();
Nonlinearity expr_nonlinearity(const std::string& f, const std::string& fs,
                               const std::string& ft);

// Scalar nonlinearity F(x,s) for the single-equation reduction.
struct Nonlinearity1D {
    std::function<double(int, double)> F, Fs;
    std::string provenance;
};

// Optional constants for the hypothesis audits. Absent entries make the
// corresponding condition not-applicable.
struct HypothesisParams {
    // (F1)/(F1'): constant majorants of f_i plus the g_i functions.
    std::optional<double> f1_sup, f2_sup;
    std::optional<VertexFunction> g1, g2;
    bool f1_prime = false; // bounds laid out as in the (F1') variant

    // (F2)
    std::optional<double> beta1, beta2;
    std::optional<VertexFunction> K1, K2;
    std::optional<int> x1, x2;

    // (C1), (C2), (C4) radii and spike data
    std::optional<double> l0, l1, l2;
    std::optional<double> M;
    std::optional<int> x3, x4;

    // (C3)
    std::optional<double> nu, A;

    // (C4)
    std::optional<double> beta3;
    std::optional<VertexFunction> K3;

    // (F0) majorants: b(x) and a piecewise-linear table of (radius, value)
    std::optional<VertexFunction> b;
    std::vector<std::pair<double, double>> a_table;

    // (H2') report levels
    std::vector<double> h_levels;
};

// The full problem instance. h0 is a declared positive lower bound for
// both potentials (defaults to the computed minimum); mu0 is cached from
// the graph. Immutable once finalized.
struct ProblemSpec {
    WeightedGraph graph;
    double p = 2.0, q = 2.0;
    VertexFunction h1, h2; // potentials, >= h0 > 0
    VertexFunction e1, e2; // perturbations, not both identically zero
    double lambda1 = 1.0, lambda2 = 1.0;
    Nonlinearity F;
    double h0 = 0.0;
    double mu0 = 0.0;
    std::optional<HypothesisParams> hyp;
};

// Checks every ProblemSpec invariant and fills the cached h0/mu0 (h0 may
// be pre-set to a declared bound <= min h). Throws validation_error with
// the violated condition named.
void finalize_spec(ProblemSpec& spec);

// Loads a problem config (JSON) and the graph it references. Paths are
// resolved relative to the config file's directory.
ProblemSpec load_problem(const std::string& config_path);
ProblemSpec load_problem_text(const std::string& config_text,
                              const std::string& base_dir);

// Built-in instances. example51 is the sub-(p,q) model problem
// (p=2, q=3, spiked fractional-power coupling at x1/x2, h = 3 + dist);
// example52 the super-(p,q) one (quartic-log coupling, distance-shaped
// potential with declared bound h0 = 1). Perturbations are indicators of
// {x1, x2} in both.
ProblemSpec preset_example51(const WeightedGraph& g, const std::string& x1,
                             const std::string& x2, double lambda1,
                             double lambda2);
ProblemSpec preset_example52(const WeightedGraph& g, const std::string& x1,
                             const std::string& x2, double lambda,
                             double c1 = 1.0);

// Embeds the scalar equation -Delta_p u + h|u|^{p-2}u = F_u(x,u) + eps e
// as the coupled system with q = p, h2 = h, e2 = 0: solving the pair with
// the v channel zero recovers the scalar equation.
ProblemSpec preset_single_equation(const WeightedGraph& g, double p,
                                   const VertexFunction& h,
                                   const VertexFunction& e, double epsilon,
                                   const Nonlinearity1D& f1d);

struct Lambda0Result {
    double Lambda0;
    double lambda0;
};

// Closed-form parameter threshold: for l0 > 0,
//   Lambda0 = min{ (l0/2) min{(h0 mu0)^{1/p}, (h0 mu0)^{1/q}}, 1 }
//   lambda0 = min{1,q-1} / (2^{m-1}(pq+p) max{h0^{-1/p}||e1||_{p'},
//             h0^{-1/q}||e2||_{q'}}) * Lambda0^{m-1},   m = max{p,q}.
Lambda0Result lambda0_params(const ProblemSpec& spec, double l0);

struct RhoAlpha {
    double rho;
    double alpha;
};

// rho = (1 - 1e-3) Lambda0 and the ridge level
//   alpha = min{1,q-1} / (2^{m-1}(pq+p)) rho^m
//           - lambda max{h0^{-1/p}||e1||, h0^{-1/q}||e2||} rho.
// Requires 0 < lambda < lambda0 and errors when alpha <= 0.
RhoAlpha rho_alpha(const ProblemSpec& spec, double l0, double lambda);

struct SpikeConstants {
    double D1, D2;      // int |grad 1_{x3}|^p dmu and the q analogue
    double M_threshold; // max{(D1+mu h1)/(p mu), (D2+mu h2)/(q mu)} at x3
};

// Closed forms in the data local to x3:
//   D1 = (deg(x3)/2)^{p/2} mu(x3)^{1-p/2}
//        + sum_{x~x3} (w_{x x3}/2)^{p/2} mu(x)^{1-p/2},
// and equal to integrate(|grad 1_{x3}|^p) exactly.
SpikeConstants spike_constants(const ProblemSpec& spec, int x3);

enum class AuditVerdict { holds, violated, flagged, not_applicable };

std::string to_string(AuditVerdict v);

struct AuditEntry {
    std::string condition;
    AuditVerdict verdict;
    std::string detail;
};

struct AuditReport {
    std::vector<AuditEntry> entries;
    bool any_violated() const;
    const AuditEntry* find(const std::string& condition) const;
};

// Finite sample set the audits run over: vertices x cross (s,t) pairs,
// plus a positive scalar ray for the one-dimensional conditions.
struct AuditGrid {
    std::vector<int> vertices;
    std::vector<std::pair<double, double>> st;
    std::vector<double> ray; // positive multipliers applied to l1/l2
    uint64_t seed = 0;
};

AuditGrid default_audit_grid(const ProblemSpec& spec, uint64_t seed);

// Sampling-based falsification of the hypothesis set. Violations found
// are definite (a witness is reported); passes are evidence only.
AuditReport audit_conditions(const ProblemSpec& spec,
                             const HypothesisParams& hp, const AuditGrid& grid);

} // namespace graphpq

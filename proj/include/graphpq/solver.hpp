#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphpq/functional.hpp"
#include "graphpq/problem.hpp"

namespace graphpq {

struct SolveOptions {
    int max_iters = 100000;
    double grad_tol = 1e-9;      // sup norm of the pointwise residual
    double armijo_c = 1e-4;      // sufficient-decrease constant
    double armijo_shrink = 0.5;  // backtracking factor
    double init_step = 1.0;
    int path_nodes = 41;         // mountain-pass discretization
    int restarts = 8;            // extra starts beyond the deterministic ones
    uint64_t seed = 0;
};

enum class Classification { trivial, semi_trivial_u, semi_trivial_v, nontrivial };

std::string to_string(Classification c);

struct BoundCheck {
    std::string name;
    double lhs, rhs;
    bool holds;
};

struct SolveReport {
    std::string mode; // "minimize", "ball" or "mountain-pass"
    State state;
    double energy = 0.0;
    double residual_sup = 0.0; // recomputed from state at report time
    long iterations = 0;
    Classification classification = Classification::trivial;
    std::vector<BoundCheck> bound_checks;
    bool converged = false;
    std::string message;
};

struct ClassifyResult {
    Classification classification;
    std::vector<BoundCheck> bound_checks;
};

// A channel counts as zero when its W-norm is at most triv_tol. For a
// semi-trivial result the sup-norm necessary bounds are evaluated from
// the (F1)/(F1') majorants when available.
ClassifyResult classify(const ProblemSpec& spec, const State& state,
                        double triv_tol = 1e-8);

// Coercive case: Armijo gradient descent from the zero state, the spike
// probes theta * 1_{x1} (theta in {+-0.1, +-1}) in the perturbed channel,
// and `restarts` random states; returns the lowest-energy converged run.
SolveReport minimize_global(const ProblemSpec& spec, const SolveOptions& opts);

// Endpoint construction for the mountain pass: s (1_{x3}, 1_{x3}) with s
// doubled from 1 until the energy is negative and the W-norm exceeds rho.
struct EndpointResult {
    State state;
    double s = 0.0;
    bool ok = false;
    std::string message;
    struct Probe {
        double s, energy, w_norm;
        double eq6_bound; // spike upper bound when (M, l1) are available
        bool has_bound;
    };
    std::vector<Probe> probes;
};

EndpointResult find_endpoint(const ProblemSpec& spec, int x3, double rho);

// Discretized min-max search: a piecewise-linear path of path_nodes
// states from (0,0) to the endpoint; each sweep moves the maximal-energy
// interior node one Armijo step along -gradient and re-spaces the path
// by W-norm arclength. Terminates when that node's residual is within
// grad_tol. `ra`, when given, adds the ridge-level comparison to
// bound_checks.
SolveReport mountain_pass(const ProblemSpec& spec, const State& endpoint,
                          const SolveOptions& opts,
                          std::optional<RhoAlpha> ra = std::nullopt);

// Descent constrained to the W-norm ball of radius rho by radial
// projection (both channel norms are degree-1 homogeneous, so rescaling
// lands exactly on the sphere). Starts include the small spike
// t1 (1_{x4}, 1_{x4}) and random states of W-norm rho/2.
SolveReport minimize_in_ball(const ProblemSpec& spec, double rho,
                             const SolveOptions& opts);

std::string report_to_json_text(const ProblemSpec& spec, const SolveReport& rep);
SolveReport report_from_json_text(const ProblemSpec& spec,
                                  const std::string& text);
// Fixed column order: vertex_id,u,v,r_u,r_v.
std::string report_to_csv_text(const ProblemSpec& spec, const SolveReport& rep);

} // namespace graphpq

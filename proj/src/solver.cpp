#include "graphpq/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

#include "graphpq/calculus.hpp"
#include "graphpq/errors.hpp"
#include "graphpq/util.hpp"
#include <json.hpp>

namespace graphpq {

namespace {

constexpr double kMinStep = 1e-20;

int worker_cap() {
    if (const char* env = std::getenv("GRAPHPQ_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(0..n-1) on up to worker_cap() threads; results are written by
// index, so the outcome does not depend on scheduling.
template <typename Fn>
void run_indexed(int n, Fn&& fn) {
    int workers = std::min(worker_cap(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

double dot(const State& a, const State& b) {
    double s = 0.0;
    for (int x = 0; x < a.u.size(); ++x)
        s += a.u[x] * b.u[x] + a.v[x] * b.v[x];
    return s;
}

State axpy(const State& x, double t, const State& d) {
    State out = x;
    for (int i = 0; i < x.u.size(); ++i) {
        out.u[i] += t * d.u[i];
        out.v[i] += t * d.v[i];
    }
    return out;
}

State diff(const State& a, const State& b) {
    State out = a;
    for (int i = 0; i < a.u.size(); ++i) {
        out.u[i] -= b.u[i];
        out.v[i] -= b.v[i];
    }
    return out;
}

State scaled(const State& a, double t) {
    State out = a;
    for (int i = 0; i < a.u.size(); ++i) {
        out.u[i] *= t;
        out.v[i] *= t;
    }
    return out;
}

State random_state(const ProblemSpec& spec, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    State st = zero_state(spec);
    for (int x = 0; x < spec.graph.size(); ++x) {
        st.u[x] = uni(rng);
        st.v[x] = uni(rng);
    }
    return st;
}

struct DescentResult {
    State state;
    double energy = 0.0;
    double residual_sup = 0.0;
    long iterations = 0;
    bool converged = false;
    bool boundary = false; // ball mode: stalled on the sphere
};

// Armijo backtracking descent along the negative mu-weighted gradient.
// `project` (when set) maps trial points back into the feasible set.
template <typename Project>
DescentResult descend(const ProblemSpec& spec, State start,
                      const SolveOptions& opts, Project&& project,
                      bool ball_mode, double rho) {
    DescentResult res;
    if (ball_mode) start = project(std::move(start));
    State x = std::move(start);
    double ex = energy(spec, x);
    Residual r = residual(spec, x);

    for (long it = 0; it < opts.max_iters; ++it) {
        if (r.sup <= opts.grad_tol) {
            res.converged = true;
            break;
        }
        State g{r.r_u, r.r_v};
        for (int i = 0; i < spec.graph.size(); ++i) {
            g.u[i] *= spec.graph.mu(i);
            g.v[i] *= spec.graph.mu(i);
        }
        double slope = dot(g, g);
        double t = opts.init_step;
        bool moved = false;
        while (t >= kMinStep) {
            State trial = axpy(x, -t, g);
            if (ball_mode) trial = project(std::move(trial));
            double et = energy(spec, trial);
            if (et <= ex - opts.armijo_c * t * slope) {
                x = std::move(trial);
                ex = et;
                moved = true;
                break;
            }
            t *= opts.armijo_shrink;
        }
        ++res.iterations;
        if (!moved) break; // no descent possible at this scale
        r = residual(spec, x);
    }

    if (!res.converged) {
        r = residual(spec, x);
        res.converged = r.sup <= opts.grad_tol;
    }
    if (ball_mode) {
        double wn = w_norm(spec, x);
        res.boundary = wn >= rho * (1.0 - 1e-6);
        if (res.boundary) res.converged = r.sup <= opts.grad_tol;
    }
    res.state = std::move(x);
    res.energy = ex;
    res.residual_sup = r.sup;
    return res;
}

struct NoProject {
    State operator()(State s) const { return s; }
};

SolveReport make_report(const ProblemSpec& spec, std::string mode, State state,
                        long iterations, bool converged, std::string message) {
    SolveReport rep;
    rep.mode = std::move(mode);
    rep.state = std::move(state);
    rep.energy = energy(spec, rep.state);
    rep.residual_sup = residual(spec, rep.state).sup; // never carried from the loop
    rep.iterations = iterations;
    rep.converged = converged;
    rep.message = std::move(message);
    ClassifyResult cls = classify(spec, rep.state);
    rep.classification = cls.classification;
    rep.bound_checks = cls.bound_checks;
    return rep;
}

} // namespace

std::string to_string(Classification c) {
    switch (c) {
    case Classification::trivial: return "trivial";
    case Classification::semi_trivial_u: return "semi-trivial-u";
    case Classification::semi_trivial_v: return "semi-trivial-v";
    case Classification::nontrivial: return "nontrivial";
    }
    return "?";
}

ClassifyResult classify(const ProblemSpec& spec, const State& state,
                        double triv_tol) {
    double nu = w_norm_u(spec, state.u);
    double nv = w_norm_v(spec, state.v);
    bool u_zero = nu <= triv_tol;
    bool v_zero = nv <= triv_tol;

    ClassifyResult out;
    if (u_zero && v_zero) out.classification = Classification::trivial;
    else if (v_zero) out.classification = Classification::semi_trivial_u;
    else if (u_zero) out.classification = Classification::semi_trivial_v;
    else out.classification = Classification::nontrivial;

    if (!spec.hyp) return out;
    const HypothesisParams& hp = *spec.hyp;
    if (!hp.f1_sup || !hp.f2_sup) return out;

    // Necessary sup-norm bounds for semi-trivial solutions. In the (F1')
    // layout the roles of the f majorants swap between the channels.
    if (out.classification == Classification::semi_trivial_u && hp.g1) {
        double f_den = hp.f1_prime ? *hp.f2_sup : *hp.f1_sup;
        if (spec.h0 > f_den) {
            double r = spec.p / (spec.p - 1.0);
            double rhs = std::pow(spec.mu0, -1.0 / spec.p) *
                         std::pow((spec.lambda1 * lp_norm(spec.graph, spec.e1, r) +
                                   lp_norm(spec.graph, *hp.g1, r)) /
                                      (spec.h0 - f_den),
                                  1.0 / (spec.p - 1.0));
            double lhs = lp_norm(spec.graph, state.u,
                                 std::numeric_limits<double>::infinity());
            out.bound_checks.push_back(
                {"semi-trivial-u-sup-bound", lhs, rhs, lhs <= rhs + 1e-12});
        }
    }
    if (out.classification == Classification::semi_trivial_v && hp.g2) {
        double f_den = hp.f1_prime ? *hp.f1_sup : *hp.f2_sup;
        if (spec.h0 > f_den) {
            double r = spec.q / (spec.q - 1.0);
            double rhs = std::pow(spec.mu0, -1.0 / spec.q) *
                         std::pow((spec.lambda2 * lp_norm(spec.graph, spec.e2, r) +
                                   lp_norm(spec.graph, *hp.g2, r)) /
                                      (spec.h0 - f_den),
                                  1.0 / (spec.q - 1.0));
            double lhs = lp_norm(spec.graph, state.v,
                                 std::numeric_limits<double>::infinity());
            out.bound_checks.push_back(
                {"semi-trivial-v-sup-bound", lhs, rhs, lhs <= rhs + 1e-12});
        }
    }
    return out;
}

SolveReport minimize_global(const ProblemSpec& spec, const SolveOptions& opts) {
    // Deterministic starts: zero, then spike probes theta 1_{x1} in the
    // channel whose perturbation is positive there.
    std::vector<State> starts;
    starts.push_back(zero_state(spec));

    int x1 = -1;
    if (spec.hyp && spec.hyp->x1) x1 = *spec.hyp->x1;
    if (x1 < 0)
        for (int x = 0; x < spec.graph.size() && x1 < 0; ++x)
            if (spec.e1[x] > 0.0 || spec.e2[x] > 0.0) x1 = x;
    if (x1 >= 0) {
        bool u_channel = spec.e1[x1] > 0.0;
        for (double theta : {0.1, -0.1, 1.0, -1.0}) {
            State st = zero_state(spec);
            if (u_channel) st.u[x1] = theta;
            else st.v[x1] = theta;
            starts.push_back(std::move(st));
        }
    }

    std::mt19937_64 seeder(opts.seed);
    while (static_cast<int>(starts.size()) < opts.restarts + 1)
        starts.push_back(random_state(spec, seeder));

    const int n = static_cast<int>(starts.size());
    std::vector<DescentResult> results(n);
    run_indexed(n, [&](int i) {
        results[i] = descend(spec, starts[i], opts, NoProject{}, false, 0.0);
    });

    // Lowest converged energy wins; ties and the no-convergence fallback
    // resolve by start index.
    int best = -1;
    for (int i = 0; i < n; ++i)
        if (results[i].converged &&
            (best < 0 || results[i].energy < results[best].energy))
            best = i;
    bool converged = best >= 0;
    if (best < 0)
        for (int i = 0; i < n; ++i)
            if (best < 0 || results[i].energy < results[best].energy) best = i;

    return make_report(spec, "minimize", std::move(results[best].state),
                       results[best].iterations, converged,
                       converged ? "" : "no start converged within max_iters");
}

EndpointResult find_endpoint(const ProblemSpec& spec, int x3, double rho) {
    const WeightedGraph& g = spec.graph;
    if (x3 < 0 || x3 >= g.size())
        throw std::invalid_argument("vertex index out of range");
    if (!(spec.e1[x3] + spec.e2[x3] > 0.0))
        throw validation_error("endpoint spike needs e1 + e2 > 0 at \"" +
                               g.id_of(x3) + "\"");

    std::optional<double> M, l1;
    if (spec.hyp) {
        M = spec.hyp->M;
        l1 = spec.hyp->l1;
    }
    SpikeConstants sc = spike_constants(spec, x3);
    double mu = g.mu(x3);
    VertexFunction spike = indicator(g, x3);

    EndpointResult out;
    for (double s = 1.0; s <= std::ldexp(1.0, 60); s *= 2.0) {
        State st{spike, spike};
        for (int x = 0; x < g.size(); ++x) {
            st.u[x] *= s;
            st.v[x] *= s;
        }
        double e = energy(spec, st);
        double wn = w_norm(spec, st);
        EndpointResult::Probe probe{s, e, wn, 0.0, false};
        if (M && (!l1 || s > *l1)) {
            // Spike upper estimate: the M(s^p+s^q) minorant of F applies
            // past l1.
            probe.eq6_bound =
                std::pow(s, spec.p) / spec.p * (sc.D1 + mu * spec.h1[x3]) +
                std::pow(s, spec.q) / spec.q * (sc.D2 + mu * spec.h2[x3]) -
                *M * mu * (std::pow(s, spec.p) + std::pow(s, spec.q)) -
                s * mu *
                    (spec.lambda1 * spec.e1[x3] + spec.lambda2 * spec.e2[x3]);
            probe.has_bound = true;
        }
        out.probes.push_back(probe);
        if (e < 0.0 && wn > rho) {
            out.state = std::move(st);
            out.s = s;
            out.ok = true;
            return out;
        }
    }
    out.message = "no doubling of the spike reached negative energy beyond "
                  "rho; the super-linear growth hypothesis likely fails";
    return out;
}

SolveReport mountain_pass(const ProblemSpec& spec, const State& endpoint,
                          const SolveOptions& opts,
                          std::optional<RhoAlpha> ra) {
    double e_end = energy(spec, endpoint);
    if (!(e_end < 0.0))
        throw std::invalid_argument("mountain pass needs a negative-energy "
                                    "endpoint (got energy = " +
                                    format_double(e_end) + ")");
    const int n_nodes = std::max(opts.path_nodes, 3);

    std::vector<State> path;
    path.reserve(n_nodes);
    for (int i = 0; i < n_nodes; ++i)
        path.push_back(scaled(endpoint, double(i) / (n_nodes - 1)));

    auto respace = [&](std::vector<State>& nodes) {
        std::vector<double> cum(nodes.size(), 0.0);
        for (std::size_t i = 1; i < nodes.size(); ++i)
            cum[i] = cum[i - 1] + w_norm(spec, diff(nodes[i], nodes[i - 1]));
        double total = cum.back();
        if (!(total > 0.0)) return;
        std::vector<State> out;
        out.reserve(nodes.size());
        out.push_back(nodes.front());
        std::size_t seg = 1;
        for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
            double target = total * double(i) / (nodes.size() - 1);
            while (seg + 1 < nodes.size() && cum[seg] < target) ++seg;
            double span = cum[seg] - cum[seg - 1];
            double t = span > 0.0 ? (target - cum[seg - 1]) / span : 0.0;
            out.push_back(axpy(scaled(nodes[seg - 1], 1.0 - t), t, nodes[seg]));
        }
        out.push_back(nodes.back());
        nodes = std::move(out);
    };

    long sweeps = 0;
    bool converged = false;
    std::string message;
    int k_max = 1;

    for (; sweeps < opts.max_iters; ++sweeps) {
        k_max = 1;
        double e_max = -std::numeric_limits<double>::infinity();
        for (int i = 1; i + 1 < n_nodes; ++i) {
            double e = energy(spec, path[i]);
            if (e > e_max) {
                e_max = e;
                k_max = i;
            }
        }

        Residual r = residual(spec, path[k_max]);
        if (r.sup <= opts.grad_tol) {
            converged = true;
            break;
        }
        if (w_norm(spec, diff(path[k_max], path.front())) <= opts.grad_tol ||
            w_norm(spec, diff(path[k_max], path.back())) <= opts.grad_tol) {
            message = "path collapse: maximal node reached an endpoint";
            break;
        }

        State g{r.r_u, r.r_v};
        for (int i = 0; i < spec.graph.size(); ++i) {
            g.u[i] *= spec.graph.mu(i);
            g.v[i] *= spec.graph.mu(i);
        }
        double slope = dot(g, g);
        double t = opts.init_step;
        bool moved = false;
        while (t >= kMinStep) {
            State trial = axpy(path[k_max], -t, g);
            if (energy(spec, trial) <= e_max - opts.armijo_c * t * slope) {
                path[k_max] = std::move(trial);
                moved = true;
                break;
            }
            t *= opts.armijo_shrink;
        }
        if (!moved) {
            message = "maximal node stalled above grad_tol";
            break;
        }
        respace(path);
    }
    if (!converged && message.empty())
        message = "max_iters sweeps exhausted";

    SolveReport rep = make_report(spec, "mountain-pass", path[k_max], sweeps,
                                  converged, converged ? "" : message);
    rep.bound_checks.push_back(
        {"saddle-energy-positive", rep.energy, 0.0, rep.energy > 0.0});
    if (ra) {
        double floor = ra->alpha - opts.grad_tol * ra->rho;
        rep.bound_checks.push_back(
            {"saddle-energy-vs-alpha", rep.energy, floor, rep.energy >= floor});
    }
    return rep;
}

SolveReport minimize_in_ball(const ProblemSpec& spec, double rho,
                             const SolveOptions& opts) {
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");

    auto project = [&](State st) {
        double wn = w_norm(spec, st);
        if (wn > rho) {
            double t = rho / wn;
            for (int x = 0; x < spec.graph.size(); ++x) {
                st.u[x] *= t;
                st.v[x] *= t;
            }
        }
        return st;
    };

    std::vector<State> starts;
    starts.push_back(zero_state(spec));

    int x4 = -1;
    if (spec.hyp) {
        if (spec.hyp->x4) x4 = *spec.hyp->x4;
        else if (spec.hyp->x3) x4 = *spec.hyp->x3;
    }
    if (x4 < 0)
        for (int x = 0; x < spec.graph.size() && x4 < 0; ++x)
            if (spec.e1[x] + spec.e2[x] > 0.0) x4 = x;
    if (x4 >= 0) {
        VertexFunction spike = indicator(spec.graph, x4);
        State probe{spike, spike};
        double t1 = 0.5 * std::min(rho / (2.0 * w_norm_u(spec, spike)),
                                   rho / (2.0 * w_norm_v(spec, spike)));
        starts.push_back(scaled(probe, t1));
    }

    std::mt19937_64 seeder(opts.seed);
    while (static_cast<int>(starts.size()) < opts.restarts + 1) {
        State st = random_state(spec, seeder);
        double wn = w_norm(spec, st);
        if (wn > 0.0) st = scaled(st, 0.5 * rho / wn);
        starts.push_back(std::move(st));
    }

    const int n = static_cast<int>(starts.size());
    std::vector<DescentResult> results(n);
    run_indexed(n, [&](int i) {
        results[i] = descend(spec, starts[i], opts, project, true, rho);
    });

    int best = -1;
    for (int i = 0; i < n; ++i)
        if (best < 0 || results[i].energy < results[best].energy) best = i;
    const DescentResult& win = results[best];

    double wn = w_norm(spec, win.state);
    bool interior = wn < rho * (1.0 - 1e-6);
    bool converged = interior ? win.converged : false;
    std::string message;
    if (!interior)
        message = "minimizer pinned to the ball boundary: the positivity of "
                  "the energy on the sphere fails, a hypothesis or the "
                  "lambda range is likely violated";
    else if (!win.converged)
        message = "no interior start converged within max_iters";

    SolveReport rep = make_report(spec, "ball", win.state, win.iterations,
                                  converged, message);
    rep.bound_checks.push_back(
        {"ball-energy-negative", rep.energy, 0.0, rep.energy < 0.0});
    rep.bound_checks.push_back(
        {"ball-interior-margin", rho - wn, 1e-6 * rho, interior});
    return rep;
}

std::string report_to_json_text(const ProblemSpec& spec,
                                const SolveReport& rep) {
    nlohmann::json j;
    j["mode"] = rep.mode;
    nlohmann::json ju = nlohmann::json::object();
    nlohmann::json jv = nlohmann::json::object();
    for (int x = 0; x < spec.graph.size(); ++x) {
        ju[spec.graph.id_of(x)] = rep.state.u[x];
        jv[spec.graph.id_of(x)] = rep.state.v[x];
    }
    j["state"] = {{"u", ju}, {"v", jv}};
    j["energy"] = rep.energy;
    j["residual_sup"] = rep.residual_sup;
    j["iterations"] = rep.iterations;
    j["classification"] = to_string(rep.classification);
    j["bound_checks"] = nlohmann::json::array();
    for (const auto& b : rep.bound_checks)
        j["bound_checks"].push_back(
            {{"name", b.name}, {"lhs", b.lhs}, {"rhs", b.rhs}, {"holds", b.holds}});
    j["converged"] = rep.converged;
    j["message"] = rep.message;
    return j.dump(2) + "\n";
}

SolveReport report_from_json_text(const ProblemSpec& spec,
                                  const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("report parse error: ") + e.what());
    }
    SolveReport rep;
    try {
        rep.mode = j.at("mode").get<std::string>();
        rep.state = zero_state(spec);
        for (auto it = j.at("state").at("u").begin();
             it != j.at("state").at("u").end(); ++it)
            rep.state.u[spec.graph.index_of(it.key())] = it.value().get<double>();
        for (auto it = j.at("state").at("v").begin();
             it != j.at("state").at("v").end(); ++it)
            rep.state.v[spec.graph.index_of(it.key())] = it.value().get<double>();
        rep.energy = j.at("energy").get<double>();
        rep.residual_sup = j.at("residual_sup").get<double>();
        rep.iterations = j.at("iterations").get<long>();
        rep.converged = j.at("converged").get<bool>();
        rep.message = j.value("message", "");
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("report structure error: ") + e.what());
    }
    return rep;
}

std::string report_to_csv_text(const ProblemSpec& spec, const SolveReport& rep) {
    Residual r = residual(spec, rep.state);
    std::string out = "vertex_id,u,v,r_u,r_v\n";
    for (int x = 0; x < spec.graph.size(); ++x)
        out += spec.graph.id_of(x) + "," + format_double(rep.state.u[x]) + "," +
               format_double(rep.state.v[x]) + "," + format_double(r.r_u[x]) +
               "," + format_double(r.r_v[x]) + "\n";
    return out;
}

} // namespace graphpq

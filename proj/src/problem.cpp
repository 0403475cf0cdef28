#include "graphpq/problem.hpp"

#include <algorithm>
#include <cmath>

#include "graphpq/calculus.hpp"
#include "graphpq/errors.hpp"
#include "graphpq/expr.hpp"
#include "graphpq/util.hpp"

namespace graphpq {

Nonlinearity zero_nonlinearity() {
    Nonlinearity f;
    f.F = [](int, double, double) { return 0.0; };
    f.Fs = [](int, double, double) { return 0.0; };
    f.Ft = [](int, double, double) { return 0.0; };
    f.provenance = "zero";
    return f;
}

Nonlinearity expr_nonlinearity(const std::string& f, const std::string& fs,
                               const std::string& ft) {
    Expr ef = Expr::parse(f);
    Expr efs = Expr::parse(fs);
    Expr eft = Expr::parse(ft);
    Nonlinearity out;
    out.F = [ef](int, double s, double t) { return ef.eval(s, t); };
    out.Fs = [efs](int, double s, double t) { return efs.eval(s, t); };
    out.Ft = [eft](int, double s, double t) { return eft.eval(s, t); };
    out.provenance = "expr";
    return out;
}

void finalize_spec(ProblemSpec& spec) {
    if (!(spec.p >= 2.0) || !(spec.q >= 2.0))
        throw validation_error("exponent constraint violated: need p >= 2 and "
                               "q >= 2, got p = " + std::to_string(spec.p) +
                               ", q = " + std::to_string(spec.q));
    const WeightedGraph& g = spec.graph;
    require_on_graph(g, spec.h1, "h1");
    require_on_graph(g, spec.h2, "h2");
    require_on_graph(g, spec.e1, "e1");
    require_on_graph(g, spec.e2, "e2");
    if (!(spec.lambda1 > 0.0) || !(spec.lambda2 > 0.0))
        throw validation_error("lambda1 and lambda2 must be positive");

    spec.mu0 = g.mu0();
    double minh = spec.h1[0];
    for (int x = 0; x < g.size(); ++x)
        minh = std::min({minh, spec.h1[x], spec.h2[x]});
    if (spec.h0 == 0.0) spec.h0 = minh; // no declared bound: cache the min
    if (!(spec.h0 > 0.0) || minh < spec.h0)
        throw validation_error("(H1) violated: potentials must satisfy "
                               "h_i(x) >= h0 > 0 (min h = " +
                               format_double(minh) + ", h0 = " +
                               format_double(spec.h0) + ")");

    bool pert = false;
    for (int x = 0; x < g.size(); ++x)
        if (spec.e1[x] != 0.0 || spec.e2[x] != 0.0) pert = true;
    if (!pert)
        throw validation_error("perturbations identically zero: e1 and e2 "
                               "must not both vanish everywhere");

    if (!spec.F.F || !spec.F.Fs || !spec.F.Ft)
        throw validation_error("nonlinearity incomplete: F, Fs, Ft all required");
    static const double probe[] = {0.0, 0.5, -0.5, 1.0, -1.0};
    for (int x = 0; x < g.size(); ++x) {
        if (spec.F.F(x, 0.0, 0.0) != 0.0)
            throw validation_error("nonlinearity invariant violated: F(" +
                                   g.id_of(x) + ",0,0) != 0");
        for (double s : probe)
            for (double t : probe)
                if (!std::isfinite(spec.F.F(x, s, t)) ||
                    !std::isfinite(spec.F.Fs(x, s, t)) ||
                    !std::isfinite(spec.F.Ft(x, s, t)))
                    throw validation_error(
                        "nonlinearity not finite at (" + g.id_of(x) + ", " +
                        format_double(s) + ", " + format_double(t) + ")");
    }

    if (spec.hyp) {
        const HypothesisParams& hp = *spec.hyp;
        if (hp.nu || hp.A) {
            if (!hp.nu || !hp.A)
                throw validation_error("(C3) parameters incomplete: nu and A "
                                       "must be given together");
            double cap = std::min(*hp.nu / spec.p - 1.0, *hp.nu / spec.q - 1.0) *
                         spec.h0;
            if (!(*hp.nu > std::max(spec.p, spec.q)))
                throw validation_error("(C3) parameter constraint violated: "
                                       "nu must exceed max{p,q}");
            if (!(*hp.A >= 0.0) || !(*hp.A < cap))
                throw validation_error("(C3) parameter constraint violated: "
                                       "need 0 <= A < min{nu/p-1, nu/q-1} h0 = " +
                                       format_double(cap));
        }
    }
}

ProblemSpec preset_example51(const WeightedGraph& g, const std::string& x1,
                             const std::string& x2, double lambda1,
                             double lambda2) {
    int x1i = g.index_of(x1);
    int x2i = g.index_of(x2);
    if (x1i == x2i)
        throw validation_error("preset needs two distinct anchor vertices");

    ProblemSpec spec;
    spec.graph = g;
    spec.p = 2.0;
    spec.q = 3.0;
    std::vector<int> d1 = g.distances_from(x1i);
    std::vector<int> d2 = g.distances_from(x2i);
    spec.h1 = VertexFunction(g.size());
    spec.h2 = VertexFunction(g.size());
    for (int x = 0; x < g.size(); ++x) {
        spec.h1[x] = 3.0 + d1[x];
        spec.h2[x] = 3.0 + d2[x];
    }
    spec.e1 = indicator(g, {x1i, x2i});
    spec.e2 = spec.e1;
    spec.lambda1 = lambda1;
    spec.lambda2 = lambda2;

    // F(x,s,t) = (3/5)(s^{5/3} + t^{5/3}) at x1, x2 and 0 elsewhere, with
    // the real odd root s^{5/3} = sign(s)|s|^{5/3}; then |F_s| = |s|^{2/3}.
    spec.F.F = [x1i, x2i](int x, double s, double t) {
        if (x != x1i && x != x2i) return 0.0;
        return 0.6 * (signed_pow(s, 5.0 / 3.0) + signed_pow(t, 5.0 / 3.0));
    };
    spec.F.Fs = [x1i, x2i](int x, double s, double) {
        if (x != x1i && x != x2i) return 0.0;
        return std::pow(std::fabs(s), 2.0 / 3.0);
    };
    spec.F.Ft = [x1i, x2i](int x, double, double t) {
        if (x != x1i && x != x2i) return 0.0;
        return std::pow(std::fabs(t), 2.0 / 3.0);
    };
    spec.F.provenance = "example51";

    HypothesisParams hp;
    hp.f1_sup = 1.0;
    hp.f2_sup = 1.0;
    hp.g1 = spec.e1;
    hp.g2 = spec.e1;
    hp.beta1 = 5.0 / 3.0;
    hp.K1 = constant_function(g, 0.6);
    hp.x1 = x1i;
    spec.hyp = hp;

    finalize_spec(spec);
    return spec;
}

ProblemSpec preset_example52(const WeightedGraph& g, const std::string& x1,
                             const std::string& x2, double lambda, double c1) {
    int x1i = g.index_of(x1);
    int x2i = g.index_of(x2);
    if (x1i == x2i)
        throw validation_error("preset needs two distinct anchor vertices");
    if (!(c1 > 0.0)) throw validation_error("c1 must be positive");

    ProblemSpec spec;
    spec.graph = g;
    spec.p = 2.0;
    spec.q = 3.0;
    std::vector<int> d1 = g.distances_from(x1i);
    std::vector<int> d2 = g.distances_from(x2i);
    spec.h1 = VertexFunction(g.size());
    for (int x = 0; x < g.size(); ++x)
        spec.h1[x] = c1 * d1[x] - 1.0 / (d2[x] + 1.0) + 2.0;
    spec.h2 = spec.h1;
    spec.e1 = indicator(g, {x1i, x2i});
    spec.e2 = spec.e1;
    spec.lambda1 = lambda;
    spec.lambda2 = lambda;
    spec.h0 = 1.0; // declared bound; h exceeds 1 on every graph
    spec.F = zero_nonlinearity();
    finalize_spec(spec);

    // Spike threshold at x1 plus 1 fixes the coupling scale.
    double M = spike_constants(spec, x1i).M_threshold + 1.0;
    spec.F.F = [M](int, double s, double t) {
        double w = s * s * s * s + t * t * t * t;
        return M * std::log1p(w) * w;
    };
    spec.F.Fs = [M](int, double s, double t) {
        double w = s * s * s * s + t * t * t * t;
        return 4.0 * M * s * s * s * (w / (1.0 + w) + std::log1p(w));
    };
    spec.F.Ft = [M](int, double s, double t) {
        double w = s * s * s * s + t * t * t * t;
        return 4.0 * M * t * t * t * (w / (1.0 + w) + std::log1p(w));
    };
    spec.F.provenance = "example52";

    HypothesisParams hp;
    hp.l0 = 1.0 / (64.0 * M);
    hp.l1 = 1.0;
    hp.l2 = 1.0;
    hp.M = M;
    hp.x3 = x1i;
    hp.x4 = x1i;
    hp.nu = 4.0;
    hp.A = 0.25;
    hp.beta3 = 2.0;
    hp.K3 = constant_function(g, 1.0);
    spec.hyp = hp;

    finalize_spec(spec);
    return spec;
}

ProblemSpec preset_single_equation(const WeightedGraph& g, double p,
                                   const VertexFunction& h,
                                   const VertexFunction& e, double epsilon,
                                   const Nonlinearity1D& f1d) {
    ProblemSpec spec;
    spec.graph = g;
    spec.p = p;
    spec.q = p;
    spec.h1 = h;
    spec.h2 = h;
    spec.e1 = e;
    spec.e2 = VertexFunction(g.size(), 0.0);
    spec.lambda1 = epsilon;
    spec.lambda2 = 1.0; // unused: the v channel has no forcing
    auto F1 = f1d.F;
    auto Fs1 = f1d.Fs;
    spec.F.F = [F1](int x, double s, double) { return F1(x, s); };
    spec.F.Fs = [Fs1](int x, double s, double) { return Fs1(x, s); };
    spec.F.Ft = [](int, double, double) { return 0.0; };
    spec.F.provenance = f1d.provenance + " (single equation)";
    finalize_spec(spec);
    return spec;
}

namespace {

// max{h0^{-1/p} ||e1||_{p/(p-1)}, h0^{-1/q} ||e2||_{q/(q-1)}}
double perturbation_scale(const ProblemSpec& spec) {
    double n1 = lp_norm(spec.graph, spec.e1, spec.p / (spec.p - 1.0));
    double n2 = lp_norm(spec.graph, spec.e2, spec.q / (spec.q - 1.0));
    return std::max(std::pow(spec.h0, -1.0 / spec.p) * n1,
                    std::pow(spec.h0, -1.0 / spec.q) * n2);
}

} // namespace

Lambda0Result lambda0_params(const ProblemSpec& spec, double l0) {
    if (!(l0 > 0.0)) throw std::invalid_argument("l0 must be positive");
    double pert = perturbation_scale(spec);
    if (!(pert > 0.0))
        throw validation_error("both perturbation norms vanish: lambda0 "
                               "undefined (division by zero)");
    double m = std::max(spec.p, spec.q);
    double hm = spec.h0 * spec.mu0;
    Lambda0Result out;
    out.Lambda0 = std::min(
        (l0 / 2.0) * std::min(std::pow(hm, 1.0 / spec.p), std::pow(hm, 1.0 / spec.q)),
        1.0);
    out.lambda0 = std::min(1.0, spec.q - 1.0) /
                  (std::pow(2.0, m - 1.0) * (spec.p * spec.q + spec.p) * pert) *
                  std::pow(out.Lambda0, m - 1.0);
    return out;
}

RhoAlpha rho_alpha(const ProblemSpec& spec, double l0, double lambda) {
    Lambda0Result l = lambda0_params(spec, l0);
    if (!(lambda > 0.0) || !(lambda < l.lambda0))
        throw validation_error("lambda out of range: need 0 < lambda < "
                               "lambda0 = " + format_double(l.lambda0) +
                               ", got " + format_double(lambda));
    // Fixed relative margin instead of an optimized eps_lambda; keeps runs
    // reproducible.
    const double delta = 1e-3;
    double m = std::max(spec.p, spec.q);
    RhoAlpha out;
    out.rho = (1.0 - delta) * l.Lambda0;
    double c = std::min(1.0, spec.q - 1.0) /
               (std::pow(2.0, m - 1.0) * (spec.p * spec.q + spec.p));
    out.alpha = c * std::pow(out.rho, m) -
                lambda * perturbation_scale(spec) * out.rho;
    if (!(out.alpha > 0.0))
        throw validation_error("alpha <= 0: lambda too close to lambda0 for "
                               "the fixed rho margin");
    return out;
}

SpikeConstants spike_constants(const ProblemSpec& spec, int x3) {
    const WeightedGraph& g = spec.graph;
    if (x3 < 0 || x3 >= g.size())
        throw std::invalid_argument("vertex index out of range");
    if (!(spec.e1[x3] + spec.e2[x3] > 0.0))
        throw validation_error("perturbation vanishes at the spike vertex \"" +
                               g.id_of(x3) + "\" (need e1 + e2 > 0 there)");

    auto D = [&](double r) {
        double deg = g.degree(x3);
        std::vector<double> terms;
        terms.reserve(g.neighbors(x3).size() + 1);
        terms.push_back(std::pow(deg / 2.0, r / 2.0) *
                        std::pow(g.mu(x3), 1.0 - r / 2.0));
        for (const auto& nb : g.neighbors(x3))
            terms.push_back(std::pow(nb.w / 2.0, r / 2.0) *
                            std::pow(g.mu(nb.to), 1.0 - r / 2.0));
        return pairwise_sum(terms);
    };

    SpikeConstants out;
    out.D1 = D(spec.p);
    out.D2 = D(spec.q);
    double mu = g.mu(x3);
    out.M_threshold = std::max((out.D1 + mu * spec.h1[x3]) / (spec.p * mu),
                               (out.D2 + mu * spec.h2[x3]) / (spec.q * mu));
    return out;
}

} // namespace graphpq

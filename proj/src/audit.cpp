#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "graphpq/errors.hpp"
#include "graphpq/problem.hpp"
#include "graphpq/util.hpp"
#include "graphpq/vertex_function.hpp"

namespace graphpq {

std::string to_string(AuditVerdict v) {
    switch (v) {
    case AuditVerdict::holds: return "checked-and-holds";
    case AuditVerdict::violated: return "checked-and-violated";
    case AuditVerdict::flagged: return "flagged-discrepancy";
    case AuditVerdict::not_applicable: return "not-applicable";
    }
    return "?";
}

bool AuditReport::any_violated() const {
    for (const auto& e : entries)
        if (e.verdict == AuditVerdict::violated) return true;
    return false;
}

const AuditEntry* AuditReport::find(const std::string& condition) const {
    for (const auto& e : entries)
        if (e.condition == condition) return &e;
    return nullptr;
}

AuditGrid default_audit_grid(const ProblemSpec& spec, uint64_t seed) {
    AuditGrid grid;
    grid.seed = seed;

    const int n = spec.graph.size();
    if (n <= 64) {
        grid.vertices.resize(n);
        for (int x = 0; x < n; ++x) grid.vertices[x] = x;
    } else {
        std::mt19937_64 rng(seed);
        std::vector<int> all(n);
        for (int x = 0; x < n; ++x) all[x] = x;
        std::shuffle(all.begin(), all.end(), rng);
        grid.vertices.assign(all.begin(), all.begin() + 64);
        if (spec.hyp) {
            for (auto ox : {spec.hyp->x1, spec.hyp->x2, spec.hyp->x3, spec.hyp->x4})
                if (ox && std::find(grid.vertices.begin(), grid.vertices.end(),
                                    *ox) == grid.vertices.end())
                    grid.vertices.push_back(*ox);
        }
        std::sort(grid.vertices.begin(), grid.vertices.end());
    }

    static const double mags[] = {0.0,  1e-3, 1e-2, 0.1, 0.3,
                                  0.7,  1.0,  2.0,  5.0, 10.0};
    std::vector<double> vals;
    for (double m : mags) {
        vals.push_back(m);
        if (m != 0.0) vals.push_back(-m);
    }
    for (double s : vals)
        for (double t : vals) grid.st.emplace_back(s, t);

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> uni(-10.0, 10.0);
    for (int k = 0; k < 48; ++k) grid.st.emplace_back(uni(rng), uni(rng));

    grid.ray = {1e-6, 1e-3, 0.01, 0.1,  0.25, 0.5,   0.75, 0.9,
                0.99, 1.0,  1.01, 1.1,  1.5,  2.0,   3.0,  5.0,
                10.0, 30.0, 1e2,  1e3,  1e4,  1e6};
    return grid;
}

namespace {

constexpr double kSlack = 1e-9; // absorbs roundoff in sampled inequalities

struct Witness {
    bool found = false;
    int x = 0;
    double s = 0.0, t = 0.0;
    double lhs = 0.0, rhs = 0.0;
};

std::string describe(const ProblemSpec& spec, const Witness& w) {
    std::ostringstream os;
    os << "witness x = " << spec.graph.id_of(w.x) << ", (s,t) = ("
       << format_double(w.s) << ", " << format_double(w.t) << "): lhs = "
       << format_double(w.lhs) << " vs rhs = " << format_double(w.rhs);
    return os.str();
}

// Piecewise-linear table lookup for the (F0) majorant a(r), clamped to
// the table's end values.
double table_value(const std::vector<std::pair<double, double>>& table,
                   double r) {
    if (table.empty()) return 0.0;
    if (r <= table.front().first) return table.front().second;
    if (r >= table.back().first) return table.back().second;
    for (std::size_t i = 1; i < table.size(); ++i)
        if (r <= table[i].first) {
            double r0 = table[i - 1].first, v0 = table[i - 1].second;
            double r1 = table[i].first, v1 = table[i].second;
            double u = (r - r0) / (r1 - r0);
            return v0 + u * (v1 - v0);
        }
    return table.back().second;
}

} // namespace

AuditReport audit_conditions(const ProblemSpec& spec,
                             const HypothesisParams& hp,
                             const AuditGrid& grid) {
    AuditReport rep;
    const WeightedGraph& g = spec.graph;
    const double p = spec.p, q = spec.q, h0 = spec.h0;
    const auto& F = spec.F;

    auto push = [&](const std::string& cond, AuditVerdict v,
                    const std::string& detail) {
        rep.entries.push_back({cond, v, detail});
    };

    // (H1): h_i(x) >= h0 > 0 everywhere.
    {
        Witness w;
        for (int x : grid.vertices) {
            if (spec.h1[x] < h0 || spec.h2[x] < h0) {
                w = {true, x, 0, 0, std::min(spec.h1[x], spec.h2[x]), h0};
                break;
            }
        }
        if (!(h0 > 0.0))
            push("(H1)", AuditVerdict::violated, "h0 is not positive");
        else if (w.found)
            push("(H1)", AuditVerdict::violated, describe(spec, w));
        else
            push("(H1)", AuditVerdict::holds,
                 "h_i >= h0 = " + format_double(h0) + " on all vertices");
    }

    // (H2'): on a finite graph every sublevel sum is finite; report the
    // sums mu{h_i <= B} for the requested levels.
    {
        std::vector<double> levels =
            !hp.h_levels.empty()
                ? hp.h_levels
                : std::vector<double>{h0, 2 * h0, 4 * h0, 8 * h0};
        std::ostringstream os;
        os << "finite sublevel sums:";
        for (double B : levels) {
            std::vector<double> m1, m2;
            for (int x = 0; x < g.size(); ++x) {
                if (spec.h1[x] <= B) m1.push_back(g.mu(x));
                if (spec.h2[x] <= B) m2.push_back(g.mu(x));
            }
            os << " B=" << format_double(B) << " -> ("
               << format_double(pairwise_sum(m1)) << ", "
               << format_double(pairwise_sum(m2)) << ");";
        }
        push("(H2')", AuditVerdict::holds, os.str());
    }

    // (F0): |F|, |F_s|, |F_t| <= a(|(s,t)|) b(x).
    if (hp.b && !hp.a_table.empty()) {
        Witness w;
        for (int x : grid.vertices) {
            for (auto [s, t] : grid.st) {
                double bound =
                    table_value(hp.a_table, std::hypot(s, t)) * (*hp.b)[x];
                double worst = std::max({std::fabs(F.F(x, s, t)),
                                         std::fabs(F.Fs(x, s, t)),
                                         std::fabs(F.Ft(x, s, t))});
                if (worst > bound + kSlack) {
                    w = {true, x, s, t, worst, bound};
                    break;
                }
            }
            if (w.found) break;
        }
        push("(F0)", w.found ? AuditVerdict::violated : AuditVerdict::holds,
             w.found ? describe(spec, w) : "majorant a(|(s,t)|) b(x) dominates");
    } else {
        push("(F0)", AuditVerdict::not_applicable, "no (b, a) majorant given");
    }

    // (F1) / (F1'): growth bounds on the partial derivatives with the
    // constant majorants f1_sup, f2_sup.
    if (hp.f1_sup && hp.f2_sup && hp.g1 && hp.g2) {
        const double f1 = *hp.f1_sup, f2 = *hp.f2_sup;
        const char* name = hp.f1_prime ? "(F1')" : "(F1)";
        std::ostringstream os;
        bool const_ok;
        if (!hp.f1_prime) {
            double cap1 = std::min(h0 / 2.0, p * h0 / (q * (p - 1.0)));
            double cap2 = h0 - q * (p - 1.0) / p * f1;
            const_ok = f1 < cap1 && f2 < cap2;
            os << "||f1|| = " << format_double(f1) << " vs min{h0/2, p h0/(q(p-1))} = "
               << format_double(cap1) << "; ||f2|| = " << format_double(f2)
               << " vs h0 - (q(p-1)/p)||f1|| = " << format_double(cap2);
        } else {
            double cap1 = std::min(h0 / 2.0, q * h0 / (p * (q - 1.0)));
            // The published bound compares ||f2|| against an expression in
            // ||f2|| itself; checked as written (f1 was likely intended).
            double cap2 = h0 - p * (q - 1.0) / q * f2;
            const_ok = f1 < cap1 && f2 < cap2;
            os << "||f1|| = " << format_double(f1) << " vs min{h0/2, q h0/(p(q-1))} = "
               << format_double(cap1) << "; ||f2|| = " << format_double(f2)
               << " vs h0 - (p(q-1)/q)||f2|| = " << format_double(cap2)
               << " (self-referential bound checked as written)";
        }
        Witness w;
        if (const_ok) {
            for (int x : grid.vertices) {
                double g1x = (*hp.g1)[x], g2x = (*hp.g2)[x];
                for (auto [s, t] : grid.st) {
                    double as = std::fabs(s), at = std::fabs(t);
                    double bs, bt;
                    if (!hp.f1_prime) {
                        bs = f1 * (std::pow(as, p - 1.0) +
                                   std::pow(at, (p * q - q) / p)) + g1x;
                        bt = f2 * (std::pow(as, p) + std::pow(at, q - 1.0)) + g2x;
                    } else {
                        bs = f2 * (std::pow(at, q) + std::pow(as, p - 1.0)) + g1x;
                        bt = f1 * (std::pow(at, q - 1.0) +
                                   std::pow(as, (q * p - p) / q)) + g2x;
                    }
                    double vs = std::fabs(F.Fs(x, s, t));
                    double vt = std::fabs(F.Ft(x, s, t));
                    if (vs > bs + kSlack) { w = {true, x, s, t, vs, bs}; break; }
                    if (vt > bt + kSlack) { w = {true, x, s, t, vt, bt}; break; }
                }
                if (w.found) break;
            }
        }
        if (!const_ok)
            push(name, AuditVerdict::violated, "norm constraint fails: " + os.str());
        else if (w.found)
            push(name, AuditVerdict::violated, describe(spec, w));
        else
            push(name, AuditVerdict::holds, os.str());
    } else {
        push(hp.f1_prime ? "(F1')" : "(F1)", AuditVerdict::not_applicable,
             "no (f_i, g_i) majorants given");
    }

    // (F2): lower bound along one axis at a perturbed vertex.
    {
        bool i_given = hp.beta1 && hp.K1 && hp.x1;
        bool ii_given = hp.beta2 && hp.K2 && hp.x2;
        auto check_axis = [&](double beta, const VertexFunction& K, int xi,
                              bool s_axis, Witness& w, std::string& why) {
            const VertexFunction& e = s_axis ? spec.e1 : spec.e2;
            if (!(K[xi] > 0.0)) {
                why = "K(" + g.id_of(xi) + ") must be positive";
                return false;
            }
            if (!(e[xi] > 0.0)) {
                why = "perturbation must be positive at " + g.id_of(xi);
                return false;
            }
            for (int x : grid.vertices)
                for (auto [s, t] : grid.st) {
                    double a = s_axis ? s : t;
                    double lhs = s_axis ? F.F(x, a, 0.0) : F.F(x, 0.0, a);
                    double rhs = -K[x] * std::pow(std::fabs(a), beta);
                    if (lhs < rhs - kSlack) {
                        w = {true, x, s_axis ? a : 0.0, s_axis ? 0.0 : a, lhs, rhs};
                        return false;
                    }
                }
            return true;
        };
        if (!i_given && !ii_given) {
            push("(F2)", AuditVerdict::not_applicable,
                 "no (beta, K, x) data for either alternative");
        } else {
            Witness w1, w2;
            std::string why1, why2;
            bool ok1 = i_given && check_axis(*hp.beta1, *hp.K1, *hp.x1, true, w1, why1);
            bool ok2 = ii_given && check_axis(*hp.beta2, *hp.K2, *hp.x2, false, w2, why2);
            if (ok1 || ok2)
                push("(F2)", AuditVerdict::holds,
                     ok1 ? "alternative (i) holds" : "alternative (ii) holds");
            else {
                std::string d;
                if (i_given)
                    d += "(i): " + (w1.found ? describe(spec, w1) : why1);
                if (ii_given)
                    d += std::string(d.empty() ? "" : "; ") + "(ii): " +
                         (w2.found ? describe(spec, w2) : why2);
                push("(F2)", AuditVerdict::violated, d);
            }
        }
    }

    // (C1): derivative bounds with constant h0/(q+1) inside |(s,t)| < l0.
    if (hp.l0) {
        const double l0 = *hp.l0;
        const double c = h0 / (q + 1.0);
        // Ring samples inside the l0 disc plus whatever grid points land
        // in it.
        std::vector<std::pair<double, double>> pts;
        for (double r : {0.05, 0.25, 0.5, 0.75, 0.9, 0.99})
            for (int k = 0; k < 16; ++k) {
                double a = 2.0 * M_PI * k / 16.0;
                pts.emplace_back(r * l0 * std::cos(a), r * l0 * std::sin(a));
            }
        for (auto [s, t] : grid.st)
            if (std::hypot(s, t) < l0) pts.emplace_back(s, t);
        Witness w;
        for (int x : grid.vertices) {
            for (auto [s, t] : pts) {
                double as = std::fabs(s), at = std::fabs(t);
                double bs = c * (std::pow(as, p - 1.0) +
                                 std::pow(at, (p * q - q) / p));
                double bt = c * (std::pow(as, p) + std::pow(at, q - 1.0));
                double vs = std::fabs(F.Fs(x, s, t));
                double vt = std::fabs(F.Ft(x, s, t));
                if (vs > bs + kSlack) { w = {true, x, s, t, vs, bs}; break; }
                if (vt > bt + kSlack) { w = {true, x, s, t, vt, bt}; break; }
            }
            if (w.found) break;
        }
        push("(C1)", w.found ? AuditVerdict::violated : AuditVerdict::holds,
             w.found ? describe(spec, w)
                     : "derivative bounds hold inside |(s,t)| < l0 = " +
                           format_double(l0));
    } else {
        push("(C1)", AuditVerdict::not_applicable, "no l0 given");
    }

    // (C2): F(x3,s,s) >= M(s^p + s^q) for s > l1, and M above the spike
    // threshold.
    if (hp.l1 && hp.M && hp.x3) {
        const double l1 = *hp.l1, M = *hp.M;
        const int x3 = *hp.x3;
        std::string pre;
        if (!(spec.e1[x3] + spec.e2[x3] > 0.0))
            pre = "perturbation vanishes at x3 = " + g.id_of(x3);
        double thr = pre.empty() ? spike_constants(spec, x3).M_threshold : 0.0;
        if (pre.empty() && !(M > thr))
            pre = "M = " + format_double(M) + " not above threshold " +
                  format_double(thr);
        Witness w;
        if (pre.empty()) {
            for (double m : grid.ray) {
                if (!(m > 1.0)) continue;
                double s = l1 * m;
                double lhs = F.F(x3, s, s);
                double rhs = M * (std::pow(s, p) + std::pow(s, q));
                if (lhs < rhs - kSlack) {
                    w = {true, x3, s, s, lhs, rhs};
                    break;
                }
            }
        }
        if (!pre.empty())
            push("(C2)", AuditVerdict::violated, pre);
        else if (w.found)
            push("(C2)", AuditVerdict::violated, describe(spec, w));
        else
            push("(C2)", AuditVerdict::holds,
                 "spike lower bound holds for sampled s > l1 = " +
                     format_double(l1) + " (M = " + format_double(M) +
                     " > threshold " + format_double(thr) + ")");
    } else {
        push("(C2)", AuditVerdict::not_applicable, "no (l1, M, x3) data");
    }

    // (C3): nu F - F_s s - F_t t <= A(|s|^p + |t|^q) everywhere.
    if (hp.nu && hp.A) {
        const double nu = *hp.nu, A = *hp.A;
        std::string pre;
        if (!(nu > std::max(p, q)))
            pre = "nu must exceed max{p,q}";
        else if (!(A >= 0.0) || !(A < std::min(nu / p - 1.0, nu / q - 1.0) * h0))
            pre = "A outside [0, min{nu/p-1, nu/q-1} h0)";
        Witness w;
        if (pre.empty()) {
            for (int x : grid.vertices) {
                for (auto [s, t] : grid.st) {
                    double lhs = nu * F.F(x, s, t) - F.Fs(x, s, t) * s -
                                 F.Ft(x, s, t) * t;
                    double rhs = A * (std::pow(std::fabs(s), p) +
                                      std::pow(std::fabs(t), q));
                    if (lhs > rhs + kSlack) {
                        w = {true, x, s, t, lhs, rhs};
                        break;
                    }
                }
                if (w.found) break;
            }
        }
        if (!pre.empty())
            push("(C3)", AuditVerdict::violated, pre);
        else if (w.found)
            push("(C3)", AuditVerdict::violated, describe(spec, w));
        else
            push("(C3)", AuditVerdict::holds,
                 "nu F - F_s s - F_t t <= A(|s|^p + |t|^q) on the grid");
    } else {
        push("(C3)", AuditVerdict::not_applicable, "no (nu, A) data");
    }

    // (C4), literal reading with |t| as |s|: F(x4,s,s) >= K3(x4) s^{beta3}
    // for 0 < s < l2. When that fails but the relaxed sign-flipped bound
    // F >= -K3 s^{beta3} holds (the published example checks the latter),
    // the discrepancy is flagged rather than resolved.
    if (hp.l2 && hp.beta3 && hp.K3 && hp.x4) {
        const double l2 = *hp.l2, b3 = *hp.beta3;
        const int x4 = *hp.x4;
        const double K = (*hp.K3)[x4];
        std::string pre;
        if (!(K > 0.0)) pre = "K3(x4) must be positive";
        else if (!(spec.e1[x4] + spec.e2[x4] > 0.0))
            pre = "perturbation vanishes at x4 = " + g.id_of(x4);
        else if (!(b3 > 1.0)) pre = "beta3 must exceed 1";
        Witness w, wr;
        if (pre.empty()) {
            for (double m : grid.ray) {
                if (!(m < 1.0)) continue;
                double s = l2 * m;
                double lhs = F.F(x4, s, s);
                double rhs = K * std::pow(s, b3);
                if (!w.found && lhs < rhs - kSlack) w = {true, x4, s, s, lhs, rhs};
                if (!wr.found && lhs < -rhs - kSlack)
                    wr = {true, x4, s, s, lhs, -rhs};
            }
        }
        if (!pre.empty())
            push("(C4)", AuditVerdict::violated, pre);
        else if (!w.found)
            push("(C4)", AuditVerdict::holds,
                 "literal spike lower bound holds for sampled 0 < s < l2");
        else if (!wr.found)
            push("(C4)", AuditVerdict::flagged,
                 "literal bound fails (" + describe(spec, w) +
                     ") but the relaxed bound F >= -K3 s^beta3 holds; "
                     "matches the published example's sign");
        else
            push("(C4)", AuditVerdict::violated, describe(spec, wr));
    } else {
        push("(C4)", AuditVerdict::not_applicable, "no (l2, beta3, K3, x4) data");
    }

    return rep;
}

} // namespace graphpq

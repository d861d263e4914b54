#include "graphlim/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "graphlim/errors.hpp"
#include "graphlim/functionals.hpp"

namespace graphlim {

namespace {

double cube(double x) { return x * x * x; }

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5)-1)/2

}  // namespace

FreeEnergySolver::FreeEnergySolver(double e, PhaseOptions options)
    : e_(e), opt_(options) {
    if (!(e > 0.0 && e <= 0.5 + 1e-12))
        throw DomainError("free energy: requires 0 < e <= 1/2");
    e_ = std::min(e, 0.5);
    closed_ = std::fabs(e_ - 0.5) <= 1e-12;
    t_upper_ = cube(e_);

    const int n = std::max(8, opt_.t_grid);
    curve_.reserve(n + 1);
    if (closed_) {
        for (int j = 0; j <= n; ++j) {
            const double t = t_upper_ * j / n;
            EntropyPoint p = entropy_closed_half(t);
            curve_.push_back(Node{t, p.s, p.maximizer});
        }
    } else {
        // Warm sweep downward from the constant kernel at t = e^3.
        std::vector<Node> rev;
        rev.reserve(n + 1);
        BipodalParams hint{0.5, e_, e_, e_};
        for (int j = n; j >= 0; --j) {
            const double t = t_upper_ * j / n;
            EntropyOptions eo = opt_.entropy;
            eo.hint = &hint;
            EntropyPoint p = entropy_numeric(e_, t, eo);
            hint = p.maximizer;
            rev.push_back(Node{t, p.s, p.maximizer});
        }
        curve_.assign(rev.rbegin(), rev.rend());
    }
}

EntropyPoint FreeEnergySolver::entropy_uncached(double t, const BipodalParams* hint) const {
    if (closed_ && t <= 0.125 + 1e-12) return entropy_closed_half(t);
    EntropyOptions eo = opt_.entropy;
    eo.hint = hint;
    return entropy_numeric(e_, t, eo);
}

EntropyPoint FreeEnergySolver::entropy(double t) const {
    const std::vector<Node>* src = &curve_;
    if (t > t_upper_ + 1e-12 && !upper_curve_.empty()) src = &upper_curve_;
    const BipodalParams* hint = nullptr;
    if (!src->empty()) {
        auto it = std::lower_bound(src->begin(), src->end(), t,
                                   [](const Node& nd, double tt) { return nd.t < tt; });
        if (it == src->end()) --it;
        hint = &it->params;
    }
    return entropy_uncached(t, hint);
}

PhasePoint FreeEnergySolver::psi_over(std::span<const Node> curve, double lo_t,
                                      double hi_t, double beta2) const {
    struct Cand {
        double t, s;
        BipodalParams m;
    };
    std::vector<Cand> cands;

    int jbest = 0;
    double vbest = -std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < curve.size(); ++j) {
        const double v = beta2 * curve[j].t + curve[j].s;
        if (v > vbest) {
            vbest = v;
            jbest = static_cast<int>(j);
        }
    }
    // Golden-section refinement around the best node.
    double a = curve[std::max(jbest - 1, 0)].t;
    double b = curve[std::min<size_t>(jbest + 1, curve.size() - 1)].t;
    a = std::max(a, lo_t);
    b = std::min(b, hi_t);
    auto g = [&](double t) { return beta2 * t + entropy(t).s; };
    double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
    double f1 = g(x1), f2 = g(x2);
    while (b - a > opt_.golden_tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = g(x1);
        }
    }
    const double tg = 0.5 * (a + b);
    EntropyPoint pg = entropy(tg);
    cands.push_back(Cand{tg, pg.s, pg.maximizer});
    cands.push_back(Cand{curve.front().t, curve.front().s, curve.front().params});
    cands.push_back(Cand{curve.back().t, curve.back().s, curve.back().params});

    PhasePoint out;
    out.beta2 = beta2;
    double best = -std::numeric_limits<double>::infinity(), second = best;
    double best_t = 0;
    for (const Cand& c : cands) {
        const double v = beta2 * c.t + c.s;
        const bool better = v > best || (v == best && c.t > best_t);
        if (better) {
            if (std::fabs(c.t - best_t) > 1e-6) second = best;
            best = v;
            best_t = c.t;
            out.psi = v;
            out.t_star = c.t;
            out.maximizer = c.m;
        } else if (std::fabs(c.t - best_t) > 1e-6) {
            second = std::max(second, v);
        }
    }
    out.tie = (best - second) <= 1e-9;
    return out;
}

PhasePoint FreeEnergySolver::psi(double beta2) const {
    // The right endpoint value s(e, e^3) = -I(e) is exact (Jensen); keeping
    // it pinned makes t_star = e^3 exact in the no-transition regime.
    std::vector<Node> lower(curve_.begin(), curve_.end());
    lower.back() = Node{t_upper_, -rate_function(e_), BipodalParams{0.5, e_, e_, e_}};

    PhasePoint p = psi_over(lower, 0.0, t_upper_, beta2);
    if (beta2 > 0) {
        // Attractive side: the maximizer may sit above the independent-edge
        // curve; extend the search to the full feasible range.
        if (upper_curve_.empty()) {
            const double t_max = std::pow(e_, 1.5);
            const int n2 = std::max(8, opt_.t_grid / 4);
            BipodalParams hint{0.5, e_, e_, e_};
            upper_curve_.push_back(
                Node{t_upper_, -rate_function(e_), BipodalParams{0.5, e_, e_, e_}});
            for (int j = 1; j <= n2; ++j) {
                const double t = t_upper_ + (t_max - t_upper_) * j / n2;
                EntropyPoint ep = entropy_uncached(t, &hint);
                hint = ep.maximizer;
                upper_curve_.push_back(Node{t, ep.s, ep.maximizer});
            }
        }
        PhasePoint up = psi_over(upper_curve_, t_upper_, std::pow(e_, 1.5), beta2);
        if (up.psi > p.psi) {
            up.tie = up.tie || std::fabs(up.psi - p.psi) <= 1e-9;
            p = up;
        } else {
            p.tie = p.tie || std::fabs(up.psi - p.psi) <= 1e-9;
        }
    }
    p.eps_star = std::cbrt(t_upper_ - p.t_star);
    return p;
}

CriticalPoint FreeEnergySolver::critical(double tol) const {
    const double s_top = -rate_function(e_);
    auto ratio = [&](double t) { return (s_top - entropy(t).s) / (t_upper_ - t); };

    const int n = static_cast<int>(curve_.size()) - 1;
    int jmin = -1;
    double rmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        const double r = (s_top - curve_[j].s) / (t_upper_ - curve_[j].t);
        if (r < rmin) {
            rmin = r;
            jmin = j;
        }
    }
    if (jmin < 0 || jmin == n - 1)
        throw ConvergenceError(
            "critical point: bracketing grid found no interior ratio minimum", rmin);

    double a = curve_[std::max(jmin - 1, 0)].t;
    double b = curve_[jmin + 1].t;
    double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
    double f1 = ratio(x1), f2 = ratio(x2);
    while (b - a > std::max(tol, 1e-13)) {
        if (f1 > f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = ratio(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = ratio(x1);
        }
    }
    const double t_c = 0.5 * (a + b);
    const double m_c = ratio(t_c);

    // The support line of slope m_c through the right endpoint must
    // dominate the entropy curve.
    double worst = 0;
    for (int j = 0; j <= 1000; ++j) {
        const double t = t_upper_ * j / 1000.0;
        const double line = s_top + m_c * (t - t_upper_);
        const double s = (j == 1000) ? s_top : entropy(t).s;
        worst = std::max(worst, s - line);
    }
    if (worst > 1e-8)
        throw ConvergenceError("critical point: support line validation failed", worst);

    CriticalPoint cp;
    cp.e = e_;
    cp.beta2_c = -m_c;
    cp.t_c = t_c;
    cp.eps_c = std::cbrt(t_upper_ - t_c);
    return cp;
}

std::vector<PhasePoint> FreeEnergySolver::scan(std::span<const double> beta2_grid) const {
    for (size_t i = 1; i < beta2_grid.size(); ++i)
        if (beta2_grid[i] > beta2_grid[i - 1] + 1e-15)
            throw DomainError("phase scan: grid must be sorted in descending order");
    std::vector<PhasePoint> out;
    out.reserve(beta2_grid.size());
    for (double b2 : beta2_grid) out.push_back(psi(b2));
    return out;
}

PhasePoint psi_constrained(double e, double beta2, PhaseOptions options) {
    return FreeEnergySolver(e, options).psi(beta2);
}

CriticalPoint critical_point(double e, double tol, PhaseOptions options) {
    return FreeEnergySolver(e, options).critical(tol);
}

std::vector<PhasePoint> phase_scan(double e, std::span<const double> beta2_grid,
                                   PhaseOptions options) {
    return FreeEnergySolver(e, options).scan(beta2_grid);
}

std::vector<CriticalCurveEntry> critical_curve(std::span<const double> e_grid,
                                               double tol, PhaseOptions options) {
    std::vector<CriticalCurveEntry> out;
    out.reserve(e_grid.size());
    for (double e : e_grid) {
        CriticalCurveEntry entry;
        entry.e = e;
        try {
            FreeEnergySolver solver(e, options);
            entry.point = solver.critical(tol);
        } catch (const Error& err) {
            entry.error = err.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

JumpReport detect_jump(std::span<const PhasePoint> scan) {
    JumpReport rep;
    if (scan.size() < 2) return rep;
    std::vector<double> diffs;
    diffs.reserve(scan.size() - 1);
    for (size_t i = 1; i < scan.size(); ++i) {
        const double d = std::fabs(scan[i].t_star - scan[i - 1].t_star);
        diffs.push_back(d);
        if (d > rep.max_jump) {
            rep.max_jump = d;
            rep.beta2_before = scan[i - 1].beta2;
            rep.beta2_after = scan[i].beta2;
        }
    }
    std::vector<double> sorted = diffs;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    rep.median_jump = sorted[sorted.size() / 2];
    rep.first_order = rep.max_jump > 1e-9 && rep.max_jump > 10 * rep.median_jump;
    return rep;
}

}  // namespace graphlim

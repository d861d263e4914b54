#include "graphlim/variational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "graphlim/errors.hpp"
#include "graphlim/functionals.hpp"

namespace graphlim {

namespace {

constexpr double kCLow = 1e-4;
constexpr double kCHigh = 1.0 - 1e-4;

double cube(double x) { return x * x * x; }

double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }
double rate_scalar(double u) { return 0.5 * xlogx(u) + 0.5 * xlogx(1.0 - u); }
// Derivative clamped away from the logarithmic singularities; the exact
// boundary cases are handled by the active-set logic, not the gradient.
double rate_deriv(double u) {
    u = std::clamp(u, 1e-12, 1.0 - 1e-12);
    return 0.5 * std::log(u / (1.0 - u));
}

using Vec4 = std::array<double, 4>;  // (c, p11, p12, p22)

const Vec4 kLo{kCLow, 0.0, 0.0, 0.0};
const Vec4 kHi{kCHigh, 1.0, 1.0, 1.0};

Vec4 clip_box(Vec4 x) {
    for (int i = 0; i < 4; ++i) x[i] = std::clamp(x[i], kLo[i], kHi[i]);
    return x;
}

struct Eval {
    double e = 0, t = 0, iavg = 0;
    Vec4 ge{}, gt{}, gi{};
};

Eval evaluate(const Vec4& x, bool grad) {
    const double c = x[0], a = x[1], b = x[2], d = x[3];
    const double u = 1.0 - c;
    Eval ev;
    ev.e = c * c * a + 2 * c * u * b + u * u * d;
    ev.t = c * c * c * a * a * a + 3 * c * c * u * a * b * b +
           3 * c * u * u * d * b * b + u * u * u * d * d * d;
    ev.iavg = c * c * rate_scalar(a) + 2 * c * u * rate_scalar(b) +
              u * u * rate_scalar(d);
    if (!grad) return ev;
    ev.ge = {2 * (c * a + (1 - 2 * c) * b - u * d), c * c, 2 * c * u, u * u};
    ev.gt = {3 * c * c * a * a * a + (6 * c - 9 * c * c) * a * b * b +
                 3 * (1 - 4 * c + 3 * c * c) * d * b * b - 3 * u * u * d * d * d,
             3 * c * c * c * a * a + 3 * c * c * u * b * b,
             6 * c * c * u * a * b + 6 * c * u * u * d * b,
             3 * c * u * u * b * b + 3 * u * u * u * d * d};
    ev.gi = {2 * c * rate_scalar(a) + (2 - 4 * c) * rate_scalar(b) -
                 2 * u * rate_scalar(d),
             c * c * rate_deriv(a), 2 * c * u * rate_deriv(b),
             u * u * rate_deriv(d)};
    return ev;
}

double penalized_value(const Eval& ev, double mu, double e0, double t0) {
    const double de = ev.e - e0, dt = ev.t - t0;
    return ev.iavg + mu * (de * de + dt * dt);
}

Vec4 penalized_grad(const Eval& ev, double mu, double e0, double t0) {
    const double de = ev.e - e0, dt = ev.t - t0;
    Vec4 g;
    for (int i = 0; i < 4; ++i)
        g[i] = ev.gi[i] + 2 * mu * (de * ev.ge[i] + dt * ev.gt[i]);
    return g;
}

// Projected gradient descent with Barzilai-Borwein steps on one penalty
// phase. Small smooth problem; monotone backtracking is enough.
void pg_phase(Vec4& x, double mu, double e0, double t0, int iters) {
    Eval ev = evaluate(x, true);
    double f = penalized_value(ev, mu, e0, t0);
    Vec4 g = penalized_grad(ev, mu, e0, t0);
    double step = 1e-3;
    for (int it = 0; it < iters; ++it) {
        Vec4 xn;
        double fn = 0;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (int i = 0; i < 4; ++i)
                xn[i] = std::clamp(x[i] - step * g[i], kLo[i], kHi[i]);
            double move = 0;
            for (int i = 0; i < 4; ++i) move = std::max(move, std::fabs(xn[i] - x[i]));
            if (move < 1e-15) return;  // stationary within the box
            fn = penalized_value(evaluate(xn, false), mu, e0, t0);
            if (fn <= f) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) return;
        Eval evn = evaluate(xn, true);
        Vec4 gn = penalized_grad(evn, mu, e0, t0);
        double ss = 0, sy = 0;
        for (int i = 0; i < 4; ++i) {
            const double s = xn[i] - x[i], y = gn[i] - g[i];
            ss += s * s;
            sy += s * y;
        }
        step = sy > 1e-300 ? std::clamp(ss / sy, 1e-13, 10.0) : std::min(step * 2, 10.0);
        x = xn;
        f = fn;
        g = gn;
    }
}

// Dense Gaussian elimination with partial pivoting; returns false when the
// system is numerically singular.
bool solve_dense(std::vector<double>& m, std::vector<double>& rhs, int n) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(m[r * n + col]) > std::fabs(m[piv * n + col])) piv = r;
        if (std::fabs(m[piv * n + col]) < 1e-14) return false;
        if (piv != col) {
            for (int cc = 0; cc < n; ++cc) std::swap(m[col * n + cc], m[piv * n + cc]);
            std::swap(rhs[col], rhs[piv]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double fac = m[r * n + col] / m[col * n + col];
            if (fac == 0) continue;
            for (int cc = col; cc < n; ++cc) m[r * n + cc] -= fac * m[col * n + cc];
            rhs[r] -= fac * rhs[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double acc = rhs[r];
        for (int cc = r + 1; cc < n; ++cc) acc -= m[r * n + cc] * rhs[cc];
        rhs[r] = acc / m[r * n + r];
    }
    return true;
}

// Active-set Newton polish of the KKT system for
//   min iavg  s.t.  e(x) = e0, t(x) = t0,  values in [0,1].
// Value coordinates may pin to the box; a constraint whose gradient
// vanishes on the free coordinates is dropped when already satisfied
// (e.g. the triangle constraint at the t = 0 corner). Pinned coordinates
// that carry a dropped constraint stay pinned regardless of multiplier
// sign, since releasing them violates the constraint at first order.
bool kkt_polish(Vec4& x, double e0, double t0, double tol_c) {
    std::array<int, 4> pin{0, 0, 0, 0};  // -1 lower, +1 upper, 0 free
    std::array<bool, 4> released_once{false, false, false, false};
    const double act_eps = 1e-5;
    for (int i = 1; i < 4; ++i) {
        if (x[i] <= act_eps) pin[i] = -1;
        if (x[i] >= 1.0 - act_eps) pin[i] = +1;
    }

    double lam[2] = {0.0, 0.0};
    for (int outer = 0; outer < 10; ++outer) {
        for (int i = 1; i < 4; ++i)
            if (pin[i] != 0) x[i] = pin[i] < 0 ? 0.0 : 1.0;

        std::vector<int> free_idx;
        for (int i = 0; i < 4; ++i)
            if (pin[i] == 0) free_idx.push_back(i);
        const int nf = static_cast<int>(free_idx.size());

        Eval ev = evaluate(x, true);
        bool keep[2];
        std::array<bool, 4> locked{false, false, false, false};
        bool restart = false;
        for (int con = 0; con < 2; ++con) {
            const Vec4& gc = con == 0 ? ev.ge : ev.gt;
            const double viol = (con == 0 ? ev.e - e0 : ev.t - t0);
            double norm = 0;
            for (int i : free_idx) norm = std::max(norm, std::fabs(gc[i]));
            if (norm >= 1e-8) {
                keep[con] = true;
                continue;
            }
            if (std::fabs(viol) <= tol_c) {
                // Degenerate and already satisfied within the acceptance
                // tolerance (e.g. the triangle constraint with both diagonal
                // values pinned at zero).
                keep[con] = false;
                lam[con] = 0;
                for (int i = 1; i < 4; ++i)
                    if (pin[i] != 0 && std::fabs(gc[i]) > 1e-8) locked[i] = true;
            } else {
                // Pinning made the constraint unreachable; release the
                // carrying coordinates, nudged off the bound so the next
                // Newton round starts at a sane scale.
                bool released = false;
                for (int i = 1; i < 4; ++i)
                    if (pin[i] != 0 && std::fabs(gc[i]) > 1e-10) {
                        const double off = std::clamp(
                            std::fabs(viol) / std::fabs(gc[i]), 1e-12, 1e-3);
                        x[i] = pin[i] < 0 ? off : 1.0 - off;
                        pin[i] = 0;
                        released_once[i] = true;
                        released = true;
                    }
                if (!released) return false;
                restart = true;
                break;
            }
        }
        if (restart) continue;

        std::vector<int> cons;
        for (int con = 0; con < 2; ++con)
            if (keep[con]) cons.push_back(con);
        const int nc = static_cast<int>(cons.size());
        const int dim = nf + nc;

        auto residual = [&](const Vec4& xx, const double* ll, std::vector<double>& r) {
            Eval e2 = evaluate(xx, true);
            for (int fi = 0; fi < nf; ++fi) {
                const int i = free_idx[fi];
                r[fi] = e2.gi[i];
                for (int ci = 0; ci < nc; ++ci)
                    r[fi] += ll[cons[ci]] * (cons[ci] == 0 ? e2.ge[i] : e2.gt[i]);
            }
            for (int ci = 0; ci < nc; ++ci)
                r[nf + ci] = cons[ci] == 0 ? e2.e - e0 : e2.t - t0;
        };

        // Initialize multipliers by least squares on the free rows. With
        // more active constraints than free coordinates the multipliers are
        // not identifiable; the pinned-coordinate release test is skipped
        // in that case.
        bool lam_identifiable = nc == 0;
        if (nc > 0 && nf > 0) {
            double ata[4] = {0, 0, 0, 0}, atb[2] = {0, 0};
            for (int fi = 0; fi < nf; ++fi) {
                const int i = free_idx[fi];
                double row[2];
                for (int ci = 0; ci < nc; ++ci)
                    row[ci] = cons[ci] == 0 ? ev.ge[i] : ev.gt[i];
                for (int ci = 0; ci < nc; ++ci) {
                    for (int cj = 0; cj < nc; ++cj) ata[ci * 2 + cj] += row[ci] * row[cj];
                    atb[ci] += row[ci] * (-ev.gi[i]);
                }
            }
            if (nc == 1) {
                if (ata[0] > 1e-12) {
                    lam[cons[0]] = atb[0] / ata[0];
                    lam_identifiable = true;
                }
            } else {
                const double det = ata[0] * ata[3] - ata[1] * ata[2];
                if (std::fabs(det) > 1e-12 * std::max(1.0, ata[0] * ata[3])) {
                    lam[0] = (atb[0] * ata[3] - ata[1] * atb[1]) / det;
                    lam[1] = (ata[0] * atb[1] - atb[0] * ata[2]) / det;
                    lam_identifiable = true;
                }
            }
        }

        std::vector<double> r(dim), rn(dim), jac(static_cast<size_t>(dim) * dim);
        bool newton_ok = false;
        bool hit_bound = false;
        for (int it = 0; it < 80; ++it) {
            residual(x, lam, r);
            double rnorm = 0;
            for (double v : r) rnorm = std::max(rnorm, std::fabs(v));
            if (rnorm < 1e-11) {
                newton_ok = true;
                break;
            }
            // Jacobian: finite differences in the free coordinates,
            // analytic in the multipliers. Relative steps keep the entropy
            // curvature resolved for near-boundary values.
            for (int fi = 0; fi < nf; ++fi) {
                const int i = free_idx[fi];
                const double h = std::max(1e-7 * std::fabs(x[i]), 1e-9);
                Vec4 xp = x, xm = x;
                xp[i] += h;
                xm[i] -= h;
                std::vector<double> rp(dim), rm(dim);
                residual(xp, lam, rp);
                residual(xm, lam, rm);
                for (int row = 0; row < dim; ++row)
                    jac[static_cast<size_t>(row) * dim + fi] = (rp[row] - rm[row]) / (2 * h);
            }
            Eval e2 = evaluate(x, true);
            for (int ci = 0; ci < nc; ++ci) {
                for (int fi = 0; fi < nf; ++fi) {
                    const int i = free_idx[fi];
                    jac[static_cast<size_t>(fi) * dim + nf + ci] =
                        cons[ci] == 0 ? e2.ge[i] : e2.gt[i];
                }
                for (int cj = 0; cj < nc; ++cj)
                    jac[static_cast<size_t>(nf + cj) * dim + nf + ci] = 0;
            }
            std::vector<double> step(r);
            for (double& v : step) v = -v;
            std::vector<double> jcopy = jac;
            if (!solve_dense(jcopy, step, dim)) {
                // Regularize once; give up if still singular.
                jcopy = jac;
                for (int dmm = 0; dmm < dim; ++dmm) jcopy[static_cast<size_t>(dmm) * dim + dmm] += 1e-10;
                step.assign(r.begin(), r.end());
                for (double& v : step) v = -v;
                if (!solve_dense(jcopy, step, dim)) break;
            }
            double alpha = 1.0;
            bool moved = false;
            for (int bt = 0; bt < 40; ++bt) {
                Vec4 xn = x;
                double ln[2] = {lam[0], lam[1]};
                for (int fi = 0; fi < nf; ++fi) {
                    const int i = free_idx[fi];
                    xn[i] = std::clamp(x[i] + alpha * step[fi], kLo[i], kHi[i]);
                }
                for (int ci = 0; ci < nc; ++ci) ln[cons[ci]] += alpha * step[nf + ci];
                residual(xn, ln, rn);
                double rnn = 0;
                for (double v : rn) rnn = std::max(rnn, std::fabs(v));
                if (rnn < (1.0 - 1e-4 * alpha) * rnorm) {
                    x = xn;
                    lam[0] = ln[0];
                    lam[1] = ln[1];
                    moved = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!moved) break;
            // A value coordinate driven onto the box gets pinned (unless it
            // was already released once: then it is a genuine interior
            // micro-solution and stays free). The threshold is loose: at a
            // degenerate corner the multiplier diverges and Newton only
            // creeps toward the bound.
            for (int fi = 0; fi < nf; ++fi) {
                const int i = free_idx[fi];
                if (i == 0 || released_once[i]) continue;
                if (x[i] <= 1e-9) {
                    pin[i] = -1;
                    hit_bound = true;
                }
                if (x[i] >= 1.0 - 1e-9) {
                    pin[i] = +1;
                    hit_bound = true;
                }
            }
            if (hit_bound) break;
        }
        if (hit_bound) continue;
        if (!newton_ok) return false;

        // Multiplier sign check for pinned coordinates (skipped for locked
        // ones and when the multipliers are not identifiable).
        if (lam_identifiable) {
            Eval e3 = evaluate(x, true);
            bool released = false;
            for (int i = 1; i < 4; ++i) {
                if (pin[i] == 0 || locked[i] || released_once[i]) continue;
                double dl = e3.gi[i];
                for (int ci = 0; ci < nc; ++ci)
                    dl += lam[cons[ci]] * (cons[ci] == 0 ? e3.ge[i] : e3.gt[i]);
                if ((pin[i] < 0 && dl < -1e-7) || (pin[i] > 0 && dl > 1e-7)) {
                    pin[i] = 0;
                    released_once[i] = true;
                    released = true;
                }
            }
            if (released) continue;
        }
        return true;
    }
    return false;
}

double halton(int index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

// Symmetric two-block family at mass 1/2 with diagonal q = 2e - p: the
// triangle density (q^3 + 3 q p^2)/4 decreases monotonically in p, so a
// feasible start for any t0 in [0, 2e^3] follows by bisection.
bool symmetric_family_seed(double e, double t0, Vec4& seed) {
    const double plo = std::max(0.0, 2 * e - 1), phi = std::min(1.0, 2 * e);
    auto tri = [&](double p) {
        const double q = 2 * e - p;
        return (q * q * q + 3 * q * p * p) / 4.0;
    };
    if (t0 > tri(plo) + 1e-12 || t0 < tri(phi) - 1e-12) return false;
    double lo = plo, hi = phi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (tri(mid) > t0 ? lo : hi) = mid;
    }
    const double p = 0.5 * (lo + hi);
    seed = {0.5, 2 * e - p, p, 2 * e - p};
    return true;
}

struct Candidate {
    Vec4 x{0, 0, 0, 0};
    double s = 0;
    double viol = 0;
    bool valid = false;
};

bool lex_less(const Vec4& a, const Vec4& b) {
    for (int i = 0; i < 4; ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

// Canonical representative among equally good parameterizations: mirror to
// c <= 1/2, snap near-half masses and near-bound values when that costs
// nothing. Keeps maximizers on clean partitions (block-permutation
// comparisons need boundaries to coincide).
Vec4 canonicalize(const Vec4& x, double e0, double t0, double tol_c) {
    auto score = [&](const Vec4& v) {
        Eval ev = evaluate(v, false);
        const double viol = std::max(std::fabs(ev.e - e0), std::fabs(ev.t - t0));
        return std::make_pair(viol, -ev.iavg);
    };
    Vec4 best = x;
    if (best[0] > 0.5) best = Vec4{1.0 - best[0], best[3], best[2], best[1]};
    auto [viol0, s0] = score(best);
    std::vector<Vec4> variants;
    if (std::fabs(best[0] - 0.5) <= 1e-4) {
        Vec4 v = best;
        v[0] = 0.5;
        variants.push_back(v);
    }
    {
        Vec4 v = best;
        bool snapped = false;
        for (int i = 1; i < 4; ++i) {
            if (v[i] > 0 && v[i] <= 1e-12) {
                v[i] = 0;
                snapped = true;
            }
            if (v[i] < 1 && v[i] >= 1 - 1e-12) {
                v[i] = 1;
                snapped = true;
            }
        }
        if (snapped) variants.push_back(v);
    }
    for (const Vec4& v : variants) {
        auto [viol, s] = score(v);
        if (viol <= std::max(viol0, tol_c) && s >= s0 - 1e-12) {
            best = v;
            viol0 = viol;
            s0 = s;
        }
    }
    return best;
}

}  // namespace

StepGraphon BipodalParams::to_graphon() const {
    return two_block_graphon(c, p11, p12, p22);
}

EntropyPoint entropy_closed_half(double t) {
    if (t < -1e-12 || t > 0.125 + 1e-12)
        throw DomainError("entropy_closed_half: t must lie in [0, 1/8]");
    t = std::clamp(t, 0.0, 0.125);
    const double eps = std::cbrt(std::max(0.125 - t, 0.0));
    EntropyPoint p;
    p.e = 0.5;
    p.t = t;
    p.s = -rate_scalar(0.5 + eps);
    p.maximizer = BipodalParams{0.5, 0.5 - eps, 0.5 + eps, 0.5 - eps};
    p.conjectural = false;
    return p;
}

EntropyPoint entropy_numeric(double e, double t, const EntropyOptions& opts) {
    if (!(e > 0.0 && e <= 0.5 + 1e-12))
        throw DomainError("entropy_numeric: requires 0 < e <= 1/2");
    e = std::min(e, 0.5);
    const double t_max = std::pow(e, 1.5);
    if (t < -1e-9 || t > t_max + 1e-9)
        throw RegionError("entropy_numeric: t outside the feasible region");
    t = std::clamp(t, 0.0, t_max);

    // On the independent-edge curve the constant kernel is the unique
    // maximizer (Jensen) and the two constraint gradients are parallel, so
    // the KKT system degenerates; return the exact point.
    if (std::fabs(t - cube(e)) <= 1e-14) {
        EntropyPoint p;
        p.e = e;
        p.t = t;
        p.s = -rate_scalar(e);
        p.maximizer = BipodalParams{0.5, e, e, e};
        p.conjectural = false;
        return p;
    }

    std::vector<Vec4> seeds;
    if (opts.hint) {
        seeds.push_back(clip_box(
            Vec4{opts.hint->c, opts.hint->p11, opts.hint->p12, opts.hint->p22}));
    }
    Vec4 sym;
    if (symmetric_family_seed(e, t, sym)) seeds.push_back(sym);
    seeds.push_back(Vec4{0.5, e, e, e});
    seeds.push_back(Vec4{0.5, 0.0, std::min(1.0, 2 * e), 0.0});
    seeds.push_back(Vec4{std::sqrt(e), 1.0, 0.0, 0.0});
    const int want = opts.hint ? static_cast<int>(seeds.size()) + 4
                               : std::max(opts.starts, static_cast<int>(seeds.size()));
    for (int i = 1; static_cast<int>(seeds.size()) < want; ++i)
        seeds.push_back(Vec4{0.05 + 0.9 * halton(i, 2), halton(i, 3), halton(i, 5),
                             halton(i, 7)});

    Candidate best;
    double best_viol = std::numeric_limits<double>::infinity();
    auto consider = [&](Vec4 xc) {
        xc = canonicalize(xc, e, t, opts.constraint_tol);
        Eval ev = evaluate(xc, false);
        const double viol = std::max(std::fabs(ev.e - e), std::fabs(ev.t - t));
        best_viol = std::min(best_viol, viol);
        if (viol > opts.constraint_tol) return;
        const double s = -ev.iavg;
        if (!best.valid || s > best.s || (s == best.s && lex_less(xc, best.x)))
            best = Candidate{xc, s, viol, true};
    };

    const int phase_iters = opts.hint ? 48 : 120;  // warm sweeps globalize less
    for (const Vec4& seed : seeds) {
        Vec4 x = clip_box(seed);
        Eval ev0 = evaluate(x, false);
        if (std::fabs(ev0.e - e) < 1e-6 && std::fabs(ev0.t - t) < 1e-6) {
            // Near-feasible seed: polish directly, before the penalty
            // ladder can wander off a constraint corner.
            Vec4 xd = x;
            if (kkt_polish(xd, e, t)) consider(xd);
        }
        for (double mu = 1e2; mu <= 1e8 + 1; mu *= 10)
            pg_phase(x, mu, e, t, phase_iters);
        Vec4 xp = x;
        if (kkt_polish(xp, e, t)) consider(xp);
        consider(x);
    }
    if (!best.valid)
        throw ConvergenceError(
            "entropy_numeric: no start satisfied the density constraints", best_viol);

    EntropyPoint p;
    p.e = e;
    p.t = t;
    p.s = best.s;
    p.maximizer = BipodalParams{best.x[0], best.x[1], best.x[2], best.x[3]};
    p.conjectural = std::fabs(e - 0.5) > 1e-12;
    return p;
}

namespace {

// Generic projected BB descent with numeric gradients, for the low-stakes
// region-boundary estimate.
void pg_minimize_fd(const std::function<double(const std::vector<double>&)>& f,
                    std::vector<double>& x, const std::vector<double>& lo,
                    const std::vector<double>& hi, int iters) {
    const int n = static_cast<int>(x.size());
    auto grad = [&](const std::vector<double>& p, std::vector<double>& g) {
        std::vector<double> q = p;
        for (int i = 0; i < n; ++i) {
            const double h = 1e-6;
            const double save = q[i];
            q[i] = save + h;
            const double fp = f(q);
            q[i] = save - h;
            const double fm = f(q);
            q[i] = save;
            g[i] = (fp - fm) / (2 * h);
        }
    };
    std::vector<double> g(n), xn(n), gn(n);
    double fv = f(x);
    grad(x, g);
    double step = 1e-2;
    for (int it = 0; it < iters; ++it) {
        bool accepted = false;
        double fn = 0;
        for (int bt = 0; bt < 50; ++bt) {
            double move = 0;
            for (int i = 0; i < n; ++i) {
                xn[i] = std::clamp(x[i] - step * g[i], lo[i], hi[i]);
                move = std::max(move, std::fabs(xn[i] - x[i]));
            }
            if (move < 1e-14) return;
            fn = f(xn);
            if (fn <= fv) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) return;
        grad(xn, gn);
        double ss = 0, sy = 0;
        for (int i = 0; i < n; ++i) {
            const double s = xn[i] - x[i], y = gn[i] - g[i];
            ss += s * s;
            sy += s * y;
        }
        step = sy > 1e-300 ? std::clamp(ss / sy, 1e-12, 1.0) : std::min(step * 2, 1.0);
        x = xn;
        fv = fn;
        g = gn;
    }
}

// Numeric minimum triangle density over k-block kernels at fixed edge
// density. Variables: k raw masses (normalized inside) + upper-triangular
// values.
double min_triangle_k(double e, int k) {
    const int nv = k + k * (k + 1) / 2;
    auto unpack = [&](const std::vector<double>& x, std::vector<double>& w,
                      std::vector<std::vector<double>>& v) {
        double sum = 0;
        for (int i = 0; i < k; ++i) sum += x[i];
        w.resize(k);
        for (int i = 0; i < k; ++i) w[i] = x[i] / sum;
        v.assign(k, std::vector<double>(k));
        int p = k;
        for (int i = 0; i < k; ++i)
            for (int j = i; j < k; ++j) {
                v[i][j] = v[j][i] = x[p];
                ++p;
            }
    };
    auto densities = [&](const std::vector<double>& x) {
        std::vector<double> w;
        std::vector<std::vector<double>> v;
        unpack(x, w, v);
        double ed = 0, td = 0;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                ed += w[i] * w[j] * v[i][j];
                for (int l = 0; l < k; ++l)
                    td += w[i] * w[j] * w[l] * v[i][j] * v[i][l] * v[j][l];
            }
        return std::make_pair(ed, td);
    };

    std::vector<std::vector<double>> starts;
    {
        // Complete multipartite seed with uniform off-diagonal weight.
        const double q = std::min(1.0, e * k / (k - 1.0));
        std::vector<double> s(nv, 0.0);
        for (int i = 0; i < k; ++i) s[i] = 1.0;
        int p = k;
        for (int i = 0; i < k; ++i)
            for (int j = i; j < k; ++j) s[p++] = i == j ? 0.0 : q;
        starts.push_back(std::move(s));
    }
    for (int h = 1; h <= 4; ++h) {
        std::vector<double> s(nv);
        for (int i = 0; i < k; ++i) s[i] = 0.2 + 0.8 * halton(h * nv + i, 2);
        for (int i = k; i < nv; ++i) s[i] = halton(h * nv + i, 3);
        starts.push_back(std::move(s));
    }

    std::vector<double> lo(nv, 0.0), hi(nv, 1.0);
    for (int i = 0; i < k; ++i) lo[i] = 0.05;
    double best = std::numeric_limits<double>::infinity();
    for (auto& s : starts) {
        std::vector<double> x = s;
        for (double mu = 1e2; mu <= 1e8 + 1; mu *= 10) {
            auto f = [&](const std::vector<double>& p) {
                auto [ed, td] = densities(p);
                return td + mu * (ed - e) * (ed - e);
            };
            pg_minimize_fd(f, x, lo, hi, 100);
        }
        auto [ed, td] = densities(x);
        if (std::fabs(ed - e) <= 1e-6) best = std::min(best, td);
    }
    {
        // The multipartite seed itself is exactly feasible when its weight
        // is admissible; keep it as an analytic candidate.
        const double q = e * k / (k - 1.0);
        if (q <= 1.0) best = std::min(best, q * q * q * (k - 1.0) * (k - 2.0) / (k * k));
    }
    return best;
}

}  // namespace

std::pair<double, double> region_bounds(double e) {
    if (!(e >= 0.0 && e <= 1.0))
        throw DomainError("region_bounds: e must lie in [0,1]");
    const double t_max = std::pow(e, 1.5);
    if (e <= 0.5 + 1e-12) return {0.0, t_max};
    double t_min = cube(e);  // constant kernel
    for (int k = 2; k <= 6; ++k) t_min = std::min(t_min, min_triangle_k(e, k));
    t_min = std::max(t_min, 0.0);
    return {t_min, t_max};
}

double min_drop_ratio(double e, std::span<const double> t_grid) {
    if (!(e > 0.0 && e <= 0.5 + 1e-12))
        throw DomainError("min_drop_ratio: requires 0 < e <= 1/2");
    const double t_top = cube(e);
    for (double t : t_grid)
        if (t < -1e-12 || t >= t_top)
            throw RegionError("min_drop_ratio: grid values must satisfy 0 <= t < e^3");
    const double s_top = -rate_scalar(e);  // Jensen equality at the constant kernel
    const bool closed = std::fabs(e - 0.5) <= 1e-12;

    double best = std::numeric_limits<double>::infinity();
    BipodalParams hint;
    bool have_hint = false;
    for (double t : t_grid) {
        double s;
        if (closed) {
            s = entropy_closed_half(t).s;
        } else {
            EntropyOptions o;
            if (have_hint) o.hint = &hint;
            EntropyPoint p = entropy_numeric(e, std::max(t, 0.0), o);
            hint = p.maximizer;
            have_hint = true;
            s = p.s;
        }
        best = std::min(best, (s_top - s) / std::pow(t_top - t, 2.0 / 3.0));
    }
    return best;
}

}  // namespace graphlim

#include "graphlim/euler_lagrange.hpp"

#include <algorithm>
#include <cmath>

#include "graphlim/errors.hpp"

namespace graphlim {

namespace {

double logistic(double g) {
    if (g >= 0) return 1.0 / (1.0 + std::exp(-g));
    const double z = std::exp(g);
    return z / (1.0 + z);
}

// Keeps iterates strictly inside (0,1) even for extreme parameters.
double logistic_clamped(double g) {
    return std::clamp(logistic(g), 1e-15, 1.0 - 1e-15);
}

void require_interior(const StepGraphon& h) {
    for (const auto& row : h.values)
        for (double v : row)
            if (v <= 0.0 || v >= 1.0)
                throw BoundaryError(
                    "kernel value on {0,1}: stationarity identity requires a "
                    "strictly interior kernel");
}

}  // namespace

std::vector<std::vector<double>> edge_rooted_density(const SimpleGraph& h,
                                                     const StepGraphon& w) {
    h.validate();
    w.validate();
    if (h.n > 8) throw SizeError("edge_rooted_density: pattern has more than 8 vertices");
    const int v = h.n;
    const int k = w.block_count();
    std::vector<std::vector<double>> acc(k, std::vector<double>(k, 0.0));

    std::vector<int> others;
    std::vector<int> phi(v);
    for (auto [r, s] : h.edges) {
        others.clear();
        for (int u = 0; u < v; ++u)
            if (u != r && u != s) others.push_back(u);
        const int m = static_cast<int>(others.size());
        std::vector<int> idx(m, 0);
        for (int a = 0; a < k; ++a) {
            for (int b = 0; b < k; ++b) {
                phi[r] = a;
                phi[s] = b;
                std::fill(idx.begin(), idx.end(), 0);
                double total = 0;
                for (;;) {
                    double term = 1.0;
                    for (int o = 0; o < m; ++o) {
                        phi[others[o]] = idx[o];
                        term *= w.masses[idx[o]];
                    }
                    if (term > 0) {
                        for (auto [r2, s2] : h.edges) {
                            if (r2 == r && s2 == s) continue;
                            term *= w.values[phi[r2]][phi[s2]];
                            if (term == 0.0) break;
                        }
                        total += term;
                    }
                    int pos = 0;
                    while (pos < m && ++idx[pos] == k) {
                        idx[pos] = 0;
                        ++pos;
                    }
                    if (pos == m) break;
                }
                acc[a][b] += total;
            }
        }
    }
    // Average both edge orientations so the kernel is symmetric for any
    // pattern (edge-transitive patterns are unaffected).
    std::vector<std::vector<double>> out(k, std::vector<double>(k));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) out[a][b] = 0.5 * (acc[a][b] + acc[b][a]);
    return out;
}

ELSolution el_fixed_point(const ELConfig& cfg, const StepGraphon& init) {
    cfg.h2.validate();
    init.validate();
    if (cfg.blocks < 1 || cfg.blocks > 64)
        throw DomainError("el_fixed_point: blocks must lie in 1..64");
    if (init.block_count() != cfg.blocks)
        throw DomainError("el_fixed_point: init partition does not match blocks");
    for (double m : init.masses)
        if (std::fabs(m - 1.0 / cfg.blocks) > 1e-12)
            throw DomainError("el_fixed_point: init must use equal-mass blocks");
    for (const auto& row : init.values)
        for (double v : row)
            if (v <= 0.0 || v >= 1.0)
                throw DomainError("el_fixed_point: init values must lie strictly in (0,1)");
    if (!(cfg.damping > 0.0 && cfg.damping <= 1.0))
        throw DomainError("el_fixed_point: damping must lie in (0,1]");
    if (!(cfg.tol > 0.0) || cfg.max_iter < 1)
        throw DomainError("el_fixed_point: bad tolerance or iteration cap");

    const int k = cfg.blocks;
    StepGraphon h = init;
    for (int it = 0;; ++it) {
        auto delta2 = edge_rooted_density(cfg.h2, h);
        double res = 0;
        std::vector<std::vector<double>> target(k, std::vector<double>(k));
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                target[a][b] =
                    logistic_clamped(2 * cfg.beta1 + 2 * cfg.beta2 * delta2[a][b]);
                res = std::max(res, std::fabs(h.values[a][b] - target[a][b]));
            }
        if (res <= cfg.tol) return ELSolution{h, res, it, true};
        if (it == cfg.max_iter) return ELSolution{h, res, it, false};
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                h.values[a][b] =
                    (1 - cfg.damping) * h.values[a][b] + cfg.damping * target[a][b];
    }
}

double stationarity_residual(const StepGraphon& h, double beta1, double beta2,
                             const SimpleGraph& h2) {
    h.validate();
    require_interior(h);
    auto delta2 = edge_rooted_density(h2, h);
    const int k = h.block_count();
    double res = 0;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            const double lhs = delta2[a][b];
            const double rhs =
                beta1 + 0.5 * beta2 * std::log(1.0 / h.values[a][b] - 1.0);
            res = std::max(res, std::fabs(lhs - rhs));
        }
    return res;
}

MultiplierFit recover_multipliers(const StepGraphon& h, const SimpleGraph& h2) {
    h.validate();
    require_interior(h);
    auto delta2 = edge_rooted_density(h2, h);
    const int k = h.block_count();

    // Count distinct kernel values (1e-12 merge).
    std::vector<double> vals;
    for (const auto& row : h.values)
        for (double v : row) vals.push_back(v);
    std::sort(vals.begin(), vals.end());
    int distinct = 1;
    for (size_t i = 1; i < vals.size(); ++i)
        if (vals[i] - vals[i - 1] > 1e-12) ++distinct;

    // Mass-weighted least squares of delta2 = b1 + (b2/2) log(1/h - 1).
    double s00 = 0, s01 = 0, s11 = 0, r0 = 0, r1 = 0;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            const double wt = h.masses[a] * h.masses[b];
            const double l = 0.5 * std::log(1.0 / h.values[a][b] - 1.0);
            const double y = delta2[a][b];
            s00 += wt;
            s01 += wt * l;
            s11 += wt * l * l;
            r0 += wt * y;
            r1 += wt * l * y;
        }
    const double det = s00 * s11 - s01 * s01;

    MultiplierFit fit;
    if (distinct < 2 || std::fabs(det) < 1e-14 * std::max(1.0, s11)) {
        fit.degenerate = true;
        fit.beta2 = 0.0;
        fit.beta1 = r0 / s00;
    } else {
        fit.beta1 = (r0 * s11 - s01 * r1) / det;
        fit.beta2 = (s00 * r1 - s01 * r0) / det;
    }
    fit.residual = 0;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            const double l = std::log(1.0 / h.values[a][b] - 1.0);
            fit.residual = std::max(
                fit.residual,
                std::fabs(delta2[a][b] - fit.beta1 - 0.5 * fit.beta2 * l));
        }
    return fit;
}

}  // namespace graphlim

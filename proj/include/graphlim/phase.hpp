#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphlim/variational.hpp"

namespace graphlim {

// One evaluation of the constrained free energy psi(e, beta2) =
// sup_t (beta2 t + s(e, t)). eps_star = cbrt(e^3 - t_star) is the offset
// of the maximizer below the independent-edge curve. `tie` marks a
// two-way tie of the supremum within 1e-9 (the transition point).
struct PhasePoint {
    double beta2 = 0;
    double psi = 0;
    double t_star = 0;
    double eps_star = 0;
    BipodalParams maximizer;
    bool tie = false;
};

// Location of the first-order transition at fixed e: the slope of the
// steepest support line touching s(e, .) at t = e^3 and at one interior
// point t_c.
struct CriticalPoint {
    double e = 0;
    double beta2_c = 0;
    double t_c = 0;
    double eps_c = 0;
};

struct PhaseOptions {
    int t_grid = 2048;        // bracketing grid for the 1-D searches
    double golden_tol = 1e-10;
    EntropyOptions entropy;   // forwarded to the numeric entropy solver
};

// Free-energy solver for one fixed edge density. Caches the entropy curve
// s(e, .) on a grid (closed form at e = 1/2, numeric warm sweep otherwise).
class FreeEnergySolver {
public:
    explicit FreeEnergySolver(double e, PhaseOptions options = {});

    double e() const { return e_; }
    // s(e, t); served from the closed form, the cache, or a warm-started
    // numeric solve.
    EntropyPoint entropy(double t) const;
    PhasePoint psi(double beta2) const;
    CriticalPoint critical(double tol) const;
    std::vector<PhasePoint> scan(std::span<const double> beta2_grid) const;

private:
    struct Node {
        double t, s;
        BipodalParams params;
    };

    EntropyPoint entropy_uncached(double t, const BipodalParams* hint) const;
    PhasePoint psi_over(std::span<const Node> curve, double lo_t, double hi_t,
                        double beta2) const;

    double e_;
    PhaseOptions opt_;
    bool closed_;          // e == 1/2: closed-form entropy
    double t_upper_;       // e^3, right end of the repulsive branch
    std::vector<Node> curve_;           // [0, e^3]
    mutable std::vector<Node> upper_curve_;  // (e^3, e^(3/2)], built on demand
};

PhasePoint psi_constrained(double e, double beta2, PhaseOptions options = {});
CriticalPoint critical_point(double e, double tol = 1e-10, PhaseOptions options = {});
// Grid must be sorted in descending beta2 order.
std::vector<PhasePoint> phase_scan(double e, std::span<const double> beta2_grid,
                                   PhaseOptions options = {});

struct CriticalCurveEntry {
    double e = 0;
    std::optional<CriticalPoint> point;
    std::string error;  // set when the per-point solve failed
};
// Per-point failures are recorded and the scan continues.
std::vector<CriticalCurveEntry> critical_curve(std::span<const double> e_grid,
                                               double tol = 1e-10,
                                               PhaseOptions options = {});

// Largest jump of t_star between adjacent scan points. first_order is set
// by the scale-free 10x-median rule.
struct JumpReport {
    double max_jump = 0;
    double beta2_before = 0;  // grid point before the jump (larger beta2)
    double beta2_after = 0;
    double median_jump = 0;
    bool first_order = false;
};
JumpReport detect_jump(std::span<const PhasePoint> scan);

}  // namespace graphlim

#pragma once

#include <span>
#include <utility>

#include "graphlim/graphon.hpp"

namespace graphlim {

// Two-block ansatz for entropy maximizers: first block mass c, values
// p11/p12/p22.
struct BipodalParams {
    double c = 0.5;
    double p11 = 0.5;
    double p12 = 0.5;
    double p22 = 0.5;

    StepGraphon to_graphon() const;
};

// One point of the constrained-entropy surface s(e, t) = max of the
// negated rate function at fixed edge and triangle density. `conjectural`
// marks values obtained from the two-block ansatz away from e = 1/2.
struct EntropyPoint {
    double e = 0;
    double t = 0;
    double s = 0;
    BipodalParams maximizer;
    bool conjectural = false;
};

// Closed form on the segment e = 1/2, t in [0, 1/8]: the symmetric
// two-block kernel with offset eps = (1/8 - t)^(1/3) is the maximizer.
EntropyPoint entropy_closed_half(double t);

struct EntropyOptions {
    int starts = 32;              // multi-start count (fixed Halton points)
    double constraint_tol = 1e-9; // admissible |e - e0|, |t - t0|
    const BipodalParams* hint = nullptr;  // warm start, shrinks the search
};

// Numeric maximization of -rate_function over the two-block ansatz subject
// to edge and triangle density constraints. Penalty phases globalize, an
// active-set Newton step polishes the KKT system. 0 < e <= 1/2 only.
EntropyPoint entropy_numeric(double e, double t, const EntropyOptions& opts = {});

// Feasible triangle-density interval at edge density e: upper bound
// e^(3/2); lower bound 0 for e <= 1/2 and a numeric k-block estimate
// (k <= 6) above, anchored at the complete multipartite points.
std::pair<double, double> region_bounds(double e);

// Minimum over the grid of (s(e,e^3) - s(e,t)) / (e^3 - t)^(2/3). A
// positive return certifies the entropy-drop lower bound on the grid with
// that constant.
double min_drop_ratio(double e, std::span<const double> t_grid);

}  // namespace graphlim

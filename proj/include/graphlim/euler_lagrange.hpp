#pragma once

#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"

namespace graphlim {

// Edge-rooted density kernel of pattern H in h: for each block pair (a,b),
// the sum over the edges of H of the density of H with that edge's
// endpoints pinned to blocks a and b (averaged over both orientations, so
// the kernel is symmetric). For a single edge this is identically 1; for
// the triangle it is 3 * sum_c w_c h(a,c) h(b,c). Entries may exceed 1.
// Patterns above 8 vertices are rejected.
std::vector<std::vector<double>> edge_rooted_density(const SimpleGraph& h,
                                                     const StepGraphon& w);

struct ELConfig {
    double beta1 = 0;
    double beta2 = 0;
    SimpleGraph h2 = SimpleGraph::complete(3);
    int blocks = 16;        // equal-mass discretization, <= 64
    double damping = 0.5;   // mixing weight of the new iterate
    double tol = 1e-10;
    int max_iter = 10000;
};

struct ELSolution {
    StepGraphon graphon;
    double residual_sup = 0;  // sup-norm of h - logistic(2 sum beta_i D_i h)
    int iterations = 0;
    bool converged = false;
};

// Damped fixed-point iteration of the self-consistency equation
// h = logistic(2 beta1 + 2 beta2 D_{H2} h) on equal-mass blocks.
// Non-convergence is reported through the flag, not an exception:
// oscillation in the repulsive regime is informative.
ELSolution el_fixed_point(const ELConfig& cfg, const StepGraphon& init);

// Sup-norm residual of the stationarity identity
// D_{H2} h = beta1 + (beta2/2) log(1/h - 1) over block pairs. Requires h
// strictly inside (0,1).
double stationarity_residual(const StepGraphon& h, double beta1, double beta2,
                             const SimpleGraph& h2);

struct MultiplierFit {
    double beta1 = 0;
    double beta2 = 0;
    double residual = 0;  // sup-norm misfit of the stationarity identity
    bool degenerate = false;  // h effectively constant: beta2 pinned to 0
};

// Mass-weighted least-squares fit of the stationarity identity, recovering
// the multipliers from a candidate maximizer. With fewer than two distinct
// kernel values the design matrix loses rank and the minimal-norm solution
// with beta2 = 0 is returned.
MultiplierFit recover_multipliers(const StepGraphon& h, const SimpleGraph& h2);

}  // namespace graphlim

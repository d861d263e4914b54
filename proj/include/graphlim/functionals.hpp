#pragma once

#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"

namespace graphlim {

// Block representation of a graph: n equal-mass blocks with 0/1 values.
StepGraphon graph_to_graphon(const SimpleGraph& g);

// Homomorphism density of pattern H in a step kernel: the sum over all
// block assignments of vertex masses times edge values. Exact for step
// kernels; cost is k^|V(H)|, patterns above 10 vertices are rejected.
double hom_density(const SimpleGraph& h, const StepGraphon& w);

double edge_density(const StepGraphon& w);
double triangle_density(const StepGraphon& w);

// (1/2) u log u + (1/2)(1-u) log(1-u), with 0 log 0 = 0. Range
// [-(log 2)/2, 0] on [0,1].
double rate_function(double u);
// Mass-weighted average of the scalar rate function over block pairs.
double rate_function(const StepGraphon& w);

}  // namespace graphlim

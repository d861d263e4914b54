#pragma once

#include <cstdint>
#include <utility>

#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"

namespace graphlim {

struct SampleSpec {
    int n = 1;
    StepGraphon graphon;
    std::uint64_t seed = 0;
};

// Kernel-random graph: each vertex draws a latent block from the mass
// distribution, each edge {i,j} is included independently with probability
// values[block_i][block_j]. Fully determined by the seed (mt19937_64 with
// 53-bit uniform draws; draw order: blocks for 0..n-1, then edges in
// lexicographic order).
SimpleGraph sample_graph(const SampleSpec& spec);

// (edge density, triangle density) = (2E/n^2, 6T/n^3).
std::pair<double, double> empirical_densities(const SimpleGraph& g);

}  // namespace graphlim

#pragma once

#include <vector>

#include "graphlim/graphon.hpp"

namespace graphlim {

// Cut norm d_box(a, b) on the common refinement: the largest absolute
// box integral of a - b over measurable S x T. The objective is bilinear
// in block membership, so the supremum is attained with every block fully
// in or out of S and T; partitions refined beyond 16 blocks are rejected.
double cut_norm(const StepGraphon& a, const StepGraphon& b);

// Upper bound for the cut distance between reduced kernels: both kernels
// are rewritten on a common equal-mass refinement (k <= 9 blocks) and the
// cut norm is minimized over all k! block permutations. Exact when the
// optimal rearrangement permutes whole blocks; arbitrary measure-preserving
// rearrangements are not searched.
double cut_distance_upper(const StepGraphon& a, const StepGraphon& b);

namespace detail {

// Core subset scan on a flattened k x k difference matrix with block
// weights w. Deterministic scan order.
double cut_norm_core(int k, const double* w, const double* d);

// Cut distance on k equal-mass blocks given flattened value matrices.
// Skips the permutation scan when either matrix is constant (the value is
// then permutation-invariant).
double cut_distance_equal_blocks(int k, const double* a, const double* b);

// Equal-mass re-blocking of refinement weights: the smallest k <= 9 such
// that every weight is an integer multiple of 1/k (tolerance 1e-9;
// multiplicity-zero weights are numerical slivers and are dropped). src
// maps each equal-mass block to its source index.
struct EqualBlocks {
    int k;
    std::vector<int> src;
};
EqualBlocks equal_mass_blocks(const std::vector<double>& weights);

}  // namespace detail

}  // namespace graphlim

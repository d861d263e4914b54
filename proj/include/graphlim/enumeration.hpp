#pragma once

#include <cstdint>
#include <optional>

#include "graphlim/graphon.hpp"

namespace graphlim {

// Exhaustive-scan parameters. n is capped at 8 (2^28 edge masks); alpha,
// when present, requires e_target and defines the open edge-density shell
// |e(G) - e| < alpha.
struct EnumSpec {
    int n = 4;
    double beta1 = 0;
    double beta2 = 0;
    std::optional<double> e_target;
    std::optional<double> alpha;
};

struct EnumResult {
    double psi = 0;            // log_partition / n^2
    std::uint64_t graph_count = 0;   // graphs contributing to the sum
    std::uint64_t total_graphs = 0;  // 2^(n(n-1)/2)
    double log_partition = 0;
};

// Exact normalization constant of the edge-triangle model at size n:
// log-sum-exp over all edge subsets, scanned in parallel over contiguous
// mask ranges with a deterministic ordered reduction.
EnumResult exact_psi(const EnumSpec& spec);

// Same scan restricted to the open shell |e(G) - e| < alpha (boundary
// graphs excluded). Throws EmptyShellError when no graph qualifies.
EnumResult exact_conditional_psi(const EnumSpec& spec);

struct ConcentrationResult {
    double mass_far = 0;  // conditional mass at cut distance >= eta from the reference
    double mean_t = 0;    // conditional mean triangle density
};

// Exact conditional-measure statistics: probability mass of shell graphs
// whose block kernel sits at least eta away from the reference in the
// equal-block cut-distance bound, plus the conditional mean triangle
// density. n <= 7.
ConcentrationResult conditional_concentration(const EnumSpec& spec,
                                              const StepGraphon& reference,
                                              double eta);

}  // namespace graphlim

#include "graphlim/sampling.hpp"

#include <random>

#include "graphlim/errors.hpp"

namespace graphlim {

namespace {

// Portable uniform draws: mt19937_64 output is pinned by the standard, and
// the 53-bit shift avoids implementation-defined distribution code.
struct Uniform01 {
    std::mt19937_64 eng;
    explicit Uniform01(std::uint64_t seed) : eng(seed) {}
    double next() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
};

}  // namespace

SimpleGraph sample_graph(const SampleSpec& spec) {
    if (spec.n < 1) throw DomainError("sample_graph: n must be positive");
    spec.graphon.validate();
    const int k = spec.graphon.block_count();
    Uniform01 rng(spec.seed);

    // Latent positions: each vertex draws its block from the mass
    // distribution (equivalent in law to a uniform position for a step
    // kernel).
    std::vector<int> block(spec.n);
    for (int i = 0; i < spec.n; ++i) {
        const double u = rng.next();
        double acc = 0;
        int b = k - 1;
        for (int j = 0; j < k; ++j) {
            acc += spec.graphon.masses[j];
            if (u < acc) {
                b = j;
                break;
            }
        }
        block[i] = b;
    }
    SimpleGraph g;
    g.n = spec.n;
    for (int i = 0; i < spec.n; ++i)
        for (int j = i + 1; j < spec.n; ++j)
            if (rng.next() < spec.graphon.values[block[i]][block[j]])
                g.edges.emplace_back(i, j);
    return g;
}

std::pair<double, double> empirical_densities(const SimpleGraph& g) {
    g.validate();
    const double n = g.n;
    const double e = 2.0 * g.edge_count() / (n * n);
    const double t = 6.0 * static_cast<double>(triangle_count(g)) / (n * n * n);
    return {e, t};
}

}  // namespace graphlim

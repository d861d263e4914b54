#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"

namespace testutil {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double u01() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * u01(); }
    int uniform_int(int a, int b) {  // inclusive
        return a + static_cast<int>(eng() % static_cast<std::uint64_t>(b - a + 1));
    }
};

inline graphlim::StepGraphon random_graphon(Rng& rng, int kmin, int kmax) {
    const int k = rng.uniform_int(kmin, kmax);
    graphlim::StepGraphon w;
    w.masses.resize(k);
    double sum = 0;
    for (int i = 0; i < k; ++i) {
        w.masses[i] = rng.uniform(0.2, 1.0);
        sum += w.masses[i];
    }
    double acc = 0;
    for (int i = 0; i + 1 < k; ++i) {
        w.masses[i] /= sum;
        acc += w.masses[i];
    }
    w.masses[k - 1] = 1.0 - acc;  // exact unit total
    w.values.assign(k, std::vector<double>(k, 0.0));
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) w.values[i][j] = w.values[j][i] = rng.u01();
    w.validate();
    return w;
}

inline graphlim::SimpleGraph random_graph(Rng& rng, int nmin, int nmax, double p) {
    const int n = rng.uniform_int(nmin, nmax);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.u01() < p) edges.emplace_back(i, j);
    return graphlim::make_graph(n, std::move(edges));
}

// Homomorphism count by direct enumeration of all vertex maps.
inline std::uint64_t hom_count(const graphlim::SimpleGraph& h,
                               const graphlim::SimpleGraph& g) {
    const int v = h.n;
    std::vector<int> phi(v, 0);
    std::uint64_t count = 0;
    for (;;) {
        bool ok = true;
        for (auto [a, b] : h.edges)
            if (!g.has_edge(phi[a], phi[b])) {
                ok = false;
                break;
            }
        if (ok) ++count;
        int pos = 0;
        while (pos < v && ++phi[pos] == g.n) {
            phi[pos] = 0;
            ++pos;
        }
        if (pos == v) break;
    }
    return count;
}

}  // namespace testutil

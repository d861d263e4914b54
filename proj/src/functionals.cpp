#include "graphlim/functionals.hpp"

#include <cmath>

#include "graphlim/errors.hpp"

namespace graphlim {

StepGraphon graph_to_graphon(const SimpleGraph& g) {
    g.validate();
    const int n = g.n;
    StepGraphon w;
    w.masses.assign(n, 1.0 / n);
    w.values.assign(n, std::vector<double>(n, 0.0));
    for (auto [i, j] : g.edges) {
        w.values[i][j] = 1.0;
        w.values[j][i] = 1.0;
    }
    return w;
}

double hom_density(const SimpleGraph& h, const StepGraphon& w) {
    h.validate();
    w.validate();
    if (h.n > 10) throw SizeError("hom_density: pattern has more than 10 vertices");
    const int v = h.n;
    const int k = w.block_count();
    std::vector<int> phi(v, 0);
    double total = 0;
    for (;;) {
        double term = 1.0;
        for (int i = 0; i < v; ++i) term *= w.masses[phi[i]];
        for (auto [a, b] : h.edges) {
            term *= w.values[phi[a]][phi[b]];
            if (term == 0.0) break;
        }
        total += term;
        int pos = 0;
        while (pos < v && ++phi[pos] == k) {
            phi[pos] = 0;
            ++pos;
        }
        if (pos == v) break;
    }
    return total;
}

double edge_density(const StepGraphon& w) {
    return hom_density(SimpleGraph::complete(2), w);
}

double triangle_density(const StepGraphon& w) {
    return hom_density(SimpleGraph::complete(3), w);
}

double rate_function(double u) {
    if (!(u >= 0.0 && u <= 1.0))
        throw DomainError("rate function: argument must lie in [0,1]");
    auto xlogx = [](double x) { return x > 0 ? x * std::log(x) : 0.0; };
    return 0.5 * xlogx(u) + 0.5 * xlogx(1.0 - u);
}

double rate_function(const StepGraphon& w) {
    w.validate();
    const int k = w.block_count();
    double total = 0;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            total += w.masses[i] * w.masses[j] * rate_function(w.values[i][j]);
    return total;
}

}  // namespace graphlim

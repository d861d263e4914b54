#include "graphlim/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "graphlim/errors.hpp"

namespace graphlim {

bool SimpleGraph::has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

void SimpleGraph::validate() const {
    if (n <= 0) throw DomainError("graph: vertex count must be positive");
    for (auto [i, j] : edges) {
        if (i < 0 || j < 0 || i >= n || j >= n)
            throw DomainError("graph: vertex index out of range");
        if (i == j) throw DomainError("graph: loops are not allowed");
        if (i > j) throw DomainError("graph: edge pairs must be stored with i < j");
    }
    for (size_t k = 1; k < edges.size(); ++k)
        if (edges[k - 1] >= edges[k])
            throw DomainError("graph: duplicate or unsorted edges");
}

SimpleGraph SimpleGraph::complete(int n) {
    SimpleGraph g;
    g.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
    g.validate();
    return g;
}

SimpleGraph SimpleGraph::empty(int n) {
    SimpleGraph g;
    g.n = n;
    g.validate();
    return g;
}

SimpleGraph SimpleGraph::path(int n) {
    SimpleGraph g;
    g.n = n;
    for (int i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
    g.validate();
    return g;
}

SimpleGraph SimpleGraph::cycle(int n) {
    SimpleGraph g = path(n);
    if (n >= 3) {
        g.edges.emplace_back(0, n - 1);
        std::sort(g.edges.begin(), g.edges.end());
    }
    g.validate();
    return g;
}

SimpleGraph SimpleGraph::disjoint_union(const SimpleGraph& a, const SimpleGraph& b) {
    SimpleGraph g;
    g.n = a.n + b.n;
    g.edges = a.edges;
    for (auto [i, j] : b.edges) g.edges.emplace_back(i + a.n, j + a.n);
    std::sort(g.edges.begin(), g.edges.end());
    g.validate();
    return g;
}

SimpleGraph make_graph(int n, std::vector<std::pair<int, int>> edges) {
    for (auto& [i, j] : edges)
        if (i > j) std::swap(i, j);
    std::sort(edges.begin(), edges.end());
    SimpleGraph g{n, std::move(edges)};
    g.validate();
    return g;
}

SimpleGraph read_graph(std::istream& in) {
    int n = 0, m = 0;
    if (!(in >> n >> m)) throw DomainError("graph: expected header \"n m\"");
    if (m < 0) throw DomainError("graph: negative edge count");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    for (int k = 0; k < m; ++k) {
        int i, j;
        if (!(in >> i >> j)) throw DomainError("graph: truncated edge list");
        edges.emplace_back(i, j);
    }
    return make_graph(n, std::move(edges));
}

SimpleGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open graph file: " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const SimpleGraph& g) {
    out << g.n << ' ' << g.edges.size() << '\n';
    for (auto [i, j] : g.edges) out << i << ' ' << j << '\n';
}

void write_graph_file(const std::string& path, const SimpleGraph& g) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot open graph file for writing: " + path);
    write_graph(out, g);
}

std::uint64_t triangle_count(const SimpleGraph& g) {
    const int n = g.n;
    const int words = (n + 63) / 64;
    std::vector<std::uint64_t> rows(static_cast<size_t>(n) * words, 0);
    auto set = [&](int i, int j) { rows[static_cast<size_t>(i) * words + j / 64] |= 1ull << (j % 64); };
    for (auto [i, j] : g.edges) {
        set(i, j);
        set(j, i);
    }
    std::uint64_t triple = 0;  // counts each triangle once per edge
    for (auto [i, j] : g.edges) {
        const std::uint64_t* ri = &rows[static_cast<size_t>(i) * words];
        const std::uint64_t* rj = &rows[static_cast<size_t>(j) * words];
        for (int w = 0; w < words; ++w) triple += std::popcount(ri[w] & rj[w]);
    }
    return triple / 3;
}

}  // namespace graphlim

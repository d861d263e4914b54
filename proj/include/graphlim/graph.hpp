#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace graphlim {

// Finite simple graph on vertices 0..n-1. Edges are stored normalized
// (i < j), sorted, without duplicates.
struct SimpleGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    int edge_count() const { return static_cast<int>(edges.size()); }
    bool has_edge(int i, int j) const;
    void validate() const;

    static SimpleGraph complete(int n);
    static SimpleGraph empty(int n);
    static SimpleGraph path(int n);
    static SimpleGraph cycle(int n);
    // Relabeled disjoint union; useful for multiplicativity checks.
    static SimpleGraph disjoint_union(const SimpleGraph& a, const SimpleGraph& b);
};

// Normalizes pair order, sorts, and validates.
SimpleGraph make_graph(int n, std::vector<std::pair<int, int>> edges);

// Text format: first line "n m", then m lines "i j".
SimpleGraph read_graph(std::istream& in);
SimpleGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const SimpleGraph& g);
void write_graph_file(const std::string& path, const SimpleGraph& g);

// Exact triangle count via bitset adjacency rows; fine up to a few
// thousand vertices.
std::uint64_t triangle_count(const SimpleGraph& g);

}  // namespace graphlim

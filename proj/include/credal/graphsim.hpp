#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "credal/core.hpp"

namespace credal {

/// Undirected simple graph over nodes 0..n-1; edges deduplicated, no
/// self-loops.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // each pair with first < second
    std::vector<std::string> node_names;
};

inline Graph make_graph(int n, const std::vector<std::pair<int, int>>& raw_edges,
                        std::vector<std::string> node_names = {}) {
    if (n < 1) throw std::invalid_argument("graph: need at least one node");
    if (!node_names.empty() && static_cast<int>(node_names.size()) != n)
        throw std::invalid_argument("graph: node name count does not match n");
    std::set<std::pair<int, int>> dedup;
    for (auto [a, b] : raw_edges) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw std::invalid_argument("graph: edge endpoint out of range");
        if (a == b) throw std::invalid_argument("graph: self-loops are not allowed");
        dedup.emplace(std::min(a, b), std::max(a, b));
    }
    Graph g;
    g.n = n;
    g.edges.assign(dedup.begin(), dedup.end());
    g.node_names = std::move(node_names);
    return g;
}

/// Jaccard neighborhood dissimilarity: 1 - |N(i) ∩ N(j)| / |N(i) ∪ N(j)|.
/// With include_self set (the default) neighborhoods are closed (contain the
/// node itself). An empty union scores similarity 0.
inline DissimilarityMatrix jaccard_dissimilarity(const Graph& g, bool include_self = true) {
    if (g.n < 2) throw std::invalid_argument("jaccard: need at least two nodes");
    std::vector<std::set<int>> nbr(static_cast<std::size_t>(g.n));
    for (auto [a, b] : g.edges) {
        nbr[static_cast<std::size_t>(a)].insert(b);
        nbr[static_cast<std::size_t>(b)].insert(a);
    }
    if (include_self)
        for (int i = 0; i < g.n; ++i) nbr[static_cast<std::size_t>(i)].insert(i);
    std::vector<double> values(static_cast<std::size_t>(g.n) * g.n, 0.0);
    for (int i = 0; i < g.n; ++i) {
        for (int j = i + 1; j < g.n; ++j) {
            const auto& a = nbr[static_cast<std::size_t>(i)];
            const auto& b = nbr[static_cast<std::size_t>(j)];
            std::size_t inter = 0;
            for (int x : a) inter += b.count(x);
            const std::size_t uni = a.size() + b.size() - inter;
            const double sim = uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
            values[static_cast<std::size_t>(i) * g.n + j] = 1.0 - sim;
            values[static_cast<std::size_t>(j) * g.n + i] = 1.0 - sim;
        }
    }
    return DissimilarityMatrix(g.n, std::move(values), g.node_names);
}

}  // namespace credal

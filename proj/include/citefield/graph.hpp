#pragma once

#include <Eigen/SparseCore>
#include <span>
#include <vector>

namespace citefield {

struct WeightedEdge {
    int source = 0;
    int target = 0;
    double weight = 1.0;
};

// Compact adjacency (CSR) over n nodes. Neighbor lists are sorted by id, so
// every traversal order is deterministic. Self-loops and duplicate edges are
// rejected; parallel structure must be merged by the caller.
class Graph {
public:
    static Graph undirected(int n, std::span<const WeightedEdge> edges);
    static Graph directed(int n, std::span<const WeightedEdge> arcs);

    int size() const { return n_; }
    bool is_directed() const { return directed_; }
    int edge_count() const { return edge_count_; }

    std::span<const int> out_neighbors(int v) const;
    std::span<const double> out_weights(int v) const;
    std::span<const int> in_neighbors(int v) const;
    std::span<const double> in_weights(int v) const;

    int out_degree(int v) const;
    int in_degree(int v) const;

    // Symmetric for undirected graphs; row = source, column = target otherwise.
    Eigen::SparseMatrix<double> weighted_adjacency() const;

    // Connected components of the undirected skeleton, each sorted by id,
    // listed in order of their smallest node.
    std::vector<std::vector<int>> components() const;

private:
    Graph() = default;
    void check_node(int v) const;

    int n_ = 0;
    bool directed_ = false;
    int edge_count_ = 0;
    std::vector<int> out_offsets_, out_targets_;
    std::vector<double> out_weights_;
    // Populated only for directed graphs; undirected lookups alias out_*.
    std::vector<int> in_offsets_, in_targets_;
    std::vector<double> in_weights_store_;
};

// Number of worker threads a kernel may use: the smaller of `requested`
// (0 = hardware concurrency) and the CITEFIELD_THREADS environment variable.
int thread_budget(int requested = 0);

}  // namespace citefield

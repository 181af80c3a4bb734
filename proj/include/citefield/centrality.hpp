#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "citefield/graph.hpp"

namespace citefield {

struct DegreeCentrality {
    int in = 0;
    int out = 0;
    double normalized = 0.0;  // fraction of possible neighbors, 0 for n = 1
};

DegreeCentrality degree_centrality(const Graph& g, int node);
std::vector<DegreeCentrality> degree_centrality(const Graph& g);

// Reachability-corrected closeness: with r nodes reachable from `node`
// (excluding itself) and D the sum of geodesic distances to them,
// closeness = (r / (n-1)) * (r / D). Reduces to (n-1)/D on connected graphs;
// isolates score 0. Geodesics are hop counts unless weighted_paths is set,
// in which case an edge of weight w has length 1/w.
double closeness_centrality(const Graph& g, int node, bool weighted_paths = false);
Eigen::VectorXd closeness_centrality(const Graph& g, bool weighted_paths = false,
                                     int threads = 0);

// Betweenness as the proportion of geodesics between other node pairs that
// pass through each node: B(k) = sum over pairs of g_ikj / g_ij, divided by
// (n-1)(n-2)/2 for undirected graphs and (n-1)(n-2) for directed ones.
// Single-source accumulation (Brandes); per-source contributions are summed
// in a fixed chunk order, so the result is identical for any thread count.
Eigen::VectorXd betweenness_centrality(const Graph& g, bool weighted_paths = false,
                                       int threads = 0);

struct EigenvectorResult {
    Eigen::VectorXd loadings;   // max-normalized; zeros off the chosen component
    double eigenvalue = 0.0;    // Rayleigh quotient of the weighted adjacency
    int iterations = 0;
    double residual = 0.0;      // ||Av - lambda*v||_inf / ||v||_inf
    std::vector<std::string> warnings;
};

// Loadings on the principal eigenvector of the weighted adjacency, computed
// by power iteration from the uniform vector. The iteration runs on
// A + shift*I (same eigenvectors; keeps the dominant eigenvalue strictly
// separated so bipartite components converge too). On a disconnected graph
// the largest component is used (ties broken by smallest contained id) and
// all other nodes score 0, with a warning.
EigenvectorResult eigenvector_centrality(const Graph& g, double tol = 1e-10,
                                         int max_iter = 1000);

}  // namespace citefield

#include "citefield/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <thread>

#include "citefield/errors.hpp"

namespace citefield {

namespace {

void validate_edges(int n, std::span<const WeightedEdge> edges, bool directed) {
    std::vector<std::pair<int, int>> keys;
    keys.reserve(edges.size());
    for (const WeightedEdge& e : edges) {
        if (e.source < 0 || e.source >= n || e.target < 0 || e.target >= n)
            throw LookupError("edge endpoint out of range: " + std::to_string(e.source) +
                              " -> " + std::to_string(e.target));
        if (e.source == e.target)
            throw Error("self-loop at node " + std::to_string(e.source));
        if (directed)
            keys.emplace_back(e.source, e.target);
        else
            keys.emplace_back(std::min(e.source, e.target), std::max(e.source, e.target));
    }
    std::sort(keys.begin(), keys.end());
    auto dup = std::adjacent_find(keys.begin(), keys.end());
    if (dup != keys.end())
        throw Error("duplicate edge " + std::to_string(dup->first) + " -> " +
                    std::to_string(dup->second));
}

struct HalfEdge {
    int from, to;
    double weight;
};

void build_csr(int n, const std::vector<HalfEdge>& half, std::vector<int>& offsets,
               std::vector<int>& targets, std::vector<double>& weights) {
    offsets.assign(static_cast<size_t>(n) + 1, 0);
    for (const HalfEdge& h : half) ++offsets[static_cast<size_t>(h.from) + 1];
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());

    targets.resize(half.size());
    weights.resize(half.size());
    std::vector<int> cursor(offsets.begin(), offsets.end() - 1);
    for (const HalfEdge& h : half) {
        const int slot = cursor[static_cast<size_t>(h.from)]++;
        targets[static_cast<size_t>(slot)] = h.to;
        weights[static_cast<size_t>(slot)] = h.weight;
    }
    // Sort each neighbor list by target id; weights travel along.
    for (int v = 0; v < n; ++v) {
        const int b = offsets[static_cast<size_t>(v)];
        const int e = offsets[static_cast<size_t>(v) + 1];
        std::vector<int> order(static_cast<size_t>(e - b));
        std::iota(order.begin(), order.end(), b);
        std::sort(order.begin(), order.end(), [&](int a, int c) {
            return targets[static_cast<size_t>(a)] < targets[static_cast<size_t>(c)];
        });
        std::vector<int> t(static_cast<size_t>(e - b));
        std::vector<double> w(static_cast<size_t>(e - b));
        for (size_t k = 0; k < order.size(); ++k) {
            t[k] = targets[static_cast<size_t>(order[k])];
            w[k] = weights[static_cast<size_t>(order[k])];
        }
        std::copy(t.begin(), t.end(), targets.begin() + b);
        std::copy(w.begin(), w.end(), weights.begin() + b);
    }
}

}  // namespace

Graph Graph::undirected(int n, std::span<const WeightedEdge> edges) {
    if (n < 0) throw Error("negative node count");
    validate_edges(n, edges, /*directed=*/false);

    Graph g;
    g.n_ = n;
    g.directed_ = false;
    g.edge_count_ = static_cast<int>(edges.size());

    std::vector<HalfEdge> half;
    half.reserve(edges.size() * 2);
    for (const WeightedEdge& e : edges) {
        half.push_back({e.source, e.target, e.weight});
        half.push_back({e.target, e.source, e.weight});
    }
    build_csr(n, half, g.out_offsets_, g.out_targets_, g.out_weights_);
    return g;
}

Graph Graph::directed(int n, std::span<const WeightedEdge> arcs) {
    if (n < 0) throw Error("negative node count");
    validate_edges(n, arcs, /*directed=*/true);

    Graph g;
    g.n_ = n;
    g.directed_ = true;
    g.edge_count_ = static_cast<int>(arcs.size());

    std::vector<HalfEdge> half, rhalf;
    half.reserve(arcs.size());
    rhalf.reserve(arcs.size());
    for (const WeightedEdge& e : arcs) {
        half.push_back({e.source, e.target, e.weight});
        rhalf.push_back({e.target, e.source, e.weight});
    }
    build_csr(n, half, g.out_offsets_, g.out_targets_, g.out_weights_);
    build_csr(n, rhalf, g.in_offsets_, g.in_targets_, g.in_weights_store_);
    return g;
}

void Graph::check_node(int v) const {
    if (v < 0 || v >= n_)
        throw LookupError("node id out of range: " + std::to_string(v));
}

std::span<const int> Graph::out_neighbors(int v) const {
    check_node(v);
    const int b = out_offsets_[static_cast<size_t>(v)];
    const int e = out_offsets_[static_cast<size_t>(v) + 1];
    return {out_targets_.data() + b, static_cast<size_t>(e - b)};
}

std::span<const double> Graph::out_weights(int v) const {
    check_node(v);
    const int b = out_offsets_[static_cast<size_t>(v)];
    const int e = out_offsets_[static_cast<size_t>(v) + 1];
    return {out_weights_.data() + b, static_cast<size_t>(e - b)};
}

std::span<const int> Graph::in_neighbors(int v) const {
    if (!directed_) return out_neighbors(v);
    check_node(v);
    const int b = in_offsets_[static_cast<size_t>(v)];
    const int e = in_offsets_[static_cast<size_t>(v) + 1];
    return {in_targets_.data() + b, static_cast<size_t>(e - b)};
}

std::span<const double> Graph::in_weights(int v) const {
    if (!directed_) return out_weights(v);
    check_node(v);
    const int b = in_offsets_[static_cast<size_t>(v)];
    const int e = in_offsets_[static_cast<size_t>(v) + 1];
    return {in_weights_store_.data() + b, static_cast<size_t>(e - b)};
}

int Graph::out_degree(int v) const { return static_cast<int>(out_neighbors(v).size()); }

int Graph::in_degree(int v) const { return static_cast<int>(in_neighbors(v).size()); }

Eigen::SparseMatrix<double> Graph::weighted_adjacency() const {
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(out_targets_.size());
    for (int v = 0; v < n_; ++v) {
        auto nbrs = out_neighbors(v);
        auto wts = out_weights(v);
        for (size_t k = 0; k < nbrs.size(); ++k)
            entries.emplace_back(v, nbrs[k], wts[k]);
    }
    Eigen::SparseMatrix<double> a(n_, n_);
    a.setFromTriplets(entries.begin(), entries.end());
    a.makeCompressed();
    return a;
}

std::vector<std::vector<int>> Graph::components() const {
    std::vector<std::vector<int>> result;
    std::vector<char> seen(static_cast<size_t>(n_), 0);
    std::vector<int> queue;
    for (int start = 0; start < n_; ++start) {
        if (seen[static_cast<size_t>(start)]) continue;
        std::vector<int> comp;
        queue.assign(1, start);
        seen[static_cast<size_t>(start)] = 1;
        while (!queue.empty()) {
            const int v = queue.back();
            queue.pop_back();
            comp.push_back(v);
            for (int u : out_neighbors(v)) {
                if (!seen[static_cast<size_t>(u)]) {
                    seen[static_cast<size_t>(u)] = 1;
                    queue.push_back(u);
                }
            }
            if (directed_) {
                for (int u : in_neighbors(v)) {
                    if (!seen[static_cast<size_t>(u)]) {
                        seen[static_cast<size_t>(u)] = 1;
                        queue.push_back(u);
                    }
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        result.push_back(std::move(comp));
    }
    return result;
}

int thread_budget(int requested) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    int budget = requested > 0 ? requested : hw;
    if (const char* env = std::getenv("CITEFIELD_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            budget = std::min(budget, static_cast<int>(v));
    }
    return std::max(1, budget);
}

}  // namespace citefield

#include "citefield/centrality.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <queue>
#include <thread>
#include <vector>

#include "citefield/errors.hpp"

namespace citefield {

DegreeCentrality degree_centrality(const Graph& g, int node) {
    DegreeCentrality d;
    d.in = g.in_degree(node);
    d.out = g.out_degree(node);
    const int n = g.size();
    if (n > 1) {
        // Undirected: fraction of the other n-1 nodes adjacent to this one.
        // Directed: arcs in either direction out of 2(n-1) possible.
        const double denom = g.is_directed() ? 2.0 * (n - 1) : static_cast<double>(n - 1);
        const double deg = g.is_directed() ? static_cast<double>(d.in + d.out)
                                           : static_cast<double>(d.out);
        d.normalized = deg / denom;
    }
    return d;
}

std::vector<DegreeCentrality> degree_centrality(const Graph& g) {
    std::vector<DegreeCentrality> result;
    result.reserve(static_cast<size_t>(g.size()));
    for (int v = 0; v < g.size(); ++v) result.push_back(degree_centrality(g, v));
    return result;
}

namespace {

constexpr int kSourceChunk = 256;

// Scratch buffers reused across the sources a worker processes.
struct SsspState {
    std::vector<double> dist;
    std::vector<double> sigma;   // geodesic counts; double per usual practice
    std::vector<double> delta;   // dependency accumulator
    std::vector<int> order;      // settled nodes, nearest first
    std::vector<std::vector<int>> preds;

    explicit SsspState(int n)
        : dist(static_cast<size_t>(n)),
          sigma(static_cast<size_t>(n)),
          delta(static_cast<size_t>(n)),
          preds(static_cast<size_t>(n)) {}

    void reset(int n) {
        // Only nodes touched by the previous source need clearing.
        for (int v : order) {
            preds[static_cast<size_t>(v)].clear();
        }
        order.clear();
        std::fill(dist.begin(), dist.end(), -1.0);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        (void)n;
    }
};

// Hop-count geodesics from `s`: fills dist, sigma, preds and the settle order.
void bfs_geodesics(const Graph& g, int s, SsspState& st) {
    st.reset(g.size());
    std::vector<int>& order = st.order;
    st.dist[static_cast<size_t>(s)] = 0.0;
    st.sigma[static_cast<size_t>(s)] = 1.0;
    order.push_back(s);
    for (size_t head = 0; head < order.size(); ++head) {
        const int v = order[head];
        const double dv = st.dist[static_cast<size_t>(v)];
        for (int u : g.out_neighbors(v)) {
            if (st.dist[static_cast<size_t>(u)] < 0.0) {
                st.dist[static_cast<size_t>(u)] = dv + 1.0;
                order.push_back(u);
            }
            if (st.dist[static_cast<size_t>(u)] == dv + 1.0) {
                st.sigma[static_cast<size_t>(u)] += st.sigma[static_cast<size_t>(v)];
                st.preds[static_cast<size_t>(u)].push_back(v);
            }
        }
    }
}

// Dijkstra with edge length 1/weight: strong ties are short paths. Geodesic
// counting uses exact equality on accumulated lengths, the usual convention.
void dijkstra_geodesics(const Graph& g, int s, SsspState& st) {
    st.reset(g.size());
    using Item = std::pair<double, int>;  // (distance, node), lazy deletion
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    std::vector<char> settled(static_cast<size_t>(g.size()), 0);

    st.dist[static_cast<size_t>(s)] = 0.0;
    st.sigma[static_cast<size_t>(s)] = 1.0;
    heap.emplace(0.0, s);
    while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (settled[static_cast<size_t>(v)]) continue;
        settled[static_cast<size_t>(v)] = 1;
        st.order.push_back(v);

        auto nbrs = g.out_neighbors(v);
        auto wts = g.out_weights(v);
        for (size_t k = 0; k < nbrs.size(); ++k) {
            const int u = nbrs[k];
            if (settled[static_cast<size_t>(u)]) continue;
            if (wts[k] <= 0.0)
                throw Error("weighted paths need positive edge weights");
            const double cand = d + 1.0 / wts[k];
            double& du = st.dist[static_cast<size_t>(u)];
            if (du < 0.0 || cand < du) {
                du = cand;
                st.sigma[static_cast<size_t>(u)] = st.sigma[static_cast<size_t>(v)];
                st.preds[static_cast<size_t>(u)].assign(1, v);
                heap.emplace(cand, u);
            } else if (cand == du) {
                st.sigma[static_cast<size_t>(u)] += st.sigma[static_cast<size_t>(v)];
                st.preds[static_cast<size_t>(u)].push_back(v);
            }
        }
    }
}

void single_source_geodesics(const Graph& g, int s, bool weighted_paths, SsspState& st) {
    if (weighted_paths)
        dijkstra_geodesics(g, s, st);
    else
        bfs_geodesics(g, s, st);
}

double closeness_from_state(const Graph& g, int s, const SsspState& st) {
    const int n = g.size();
    if (n <= 1) return 0.0;
    double total = 0.0;
    long reachable = 0;
    for (int v : st.order) {
        if (v == s) continue;
        total += st.dist[static_cast<size_t>(v)];
        ++reachable;
    }
    if (reachable == 0 || total <= 0.0) return 0.0;
    const double r = static_cast<double>(reachable);
    // Reachability-corrected closeness; equals (n-1)/total when all reached.
    return (r / static_cast<double>(n - 1)) * (r / total);
}

}  // namespace

double closeness_centrality(const Graph& g, int node, bool weighted_paths) {
    SsspState st(g.size());
    single_source_geodesics(g, node, weighted_paths, st);
    return closeness_from_state(g, node, st);
}

Eigen::VectorXd closeness_centrality(const Graph& g, bool weighted_paths, int threads) {
    const int n = g.size();
    Eigen::VectorXd result = Eigen::VectorXd::Zero(n);
    if (n == 0) return result;

    const int workers = std::min(thread_budget(threads), std::max(1, n));
    std::atomic<int> next{0};
    auto work = [&]() {
        SsspState st(n);
        for (int s = next.fetch_add(1); s < n; s = next.fetch_add(1)) {
            single_source_geodesics(g, s, weighted_paths, st);
            result[s] = closeness_from_state(g, s, st);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    return result;
}

Eigen::VectorXd betweenness_centrality(const Graph& g, bool weighted_paths, int threads) {
    const int n = g.size();
    if (n < 3) return Eigen::VectorXd::Zero(std::max(n, 0));

    // Per-source dependencies are summed within fixed 256-source chunks and
    // the chunk partials are reduced in chunk order, so the floating-point
    // addition sequence (and the result) is independent of the thread count.
    const int chunks = (n + kSourceChunk - 1) / kSourceChunk;
    std::vector<Eigen::VectorXd> partial(static_cast<size_t>(chunks));

    std::atomic<int> next{0};
    auto work = [&]() {
        SsspState st(n);
        for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
            Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
            const int begin = c * kSourceChunk;
            const int end = std::min(n, begin + kSourceChunk);
            for (int s = begin; s < end; ++s) {
                single_source_geodesics(g, s, weighted_paths, st);
                // Brandes dependency pass, farthest settled node first.
                for (size_t k = st.order.size(); k-- > 0;) {
                    const int w = st.order[k];
                    const double coeff =
                        (1.0 + st.delta[static_cast<size_t>(w)]) / st.sigma[static_cast<size_t>(w)];
                    for (int v : st.preds[static_cast<size_t>(w)])
                        st.delta[static_cast<size_t>(v)] += st.sigma[static_cast<size_t>(v)] * coeff;
                    if (w != s) acc[w] += st.delta[static_cast<size_t>(w)];
                }
            }
            partial[static_cast<size_t>(c)] = std::move(acc);
        }
    };

    const int workers = std::min(thread_budget(threads), chunks);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }

    Eigen::VectorXd raw = Eigen::VectorXd::Zero(n);
    for (int c = 0; c < chunks; ++c) raw += partial[static_cast<size_t>(c)];

    // Undirected sums count each unordered pair twice; the pair count
    // (n-1)(n-2)/2 absorbs the factor, giving the same scale either way.
    const double scale = 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    return raw * scale;
}

EigenvectorResult eigenvector_centrality(const Graph& g, double tol, int max_iter) {
    const int n = g.size();
    EigenvectorResult result;
    result.loadings = Eigen::VectorXd::Zero(n);
    if (n == 0) return result;

    auto comps = g.components();
    // Largest component wins; the list is ordered by smallest contained id,
    // so on ties the earlier (smaller-id) component is kept.
    size_t chosen = 0;
    for (size_t i = 1; i < comps.size(); ++i)
        if (comps[i].size() > comps[chosen].size()) chosen = i;
    if (comps.size() > 1)
        result.warnings.push_back(
            "graph has " + std::to_string(comps.size()) +
            " components; loadings computed on the largest, other nodes score 0");

    const std::vector<int>& comp = comps[chosen];
    if (comp.size() == 1) {
        // No edges to iterate over; the trivial eigenvector is the node itself.
        result.loadings[comp[0]] = 1.0;
        return result;
    }

    // Row sums of the iteration matrix restricted to the component. Incoming
    // weights drive the recursion x_v = sum over u->v of w * x_u; undirected
    // graphs read the same spans both ways.
    double shift = 0.0;
    for (int v : comp) {
        double row = 0.0;
        for (double w : g.in_weights(v)) row += std::abs(w);
        shift = std::max(shift, row);
    }

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (int v : comp) x[v] = 1.0;

    Eigen::VectorXd ax = Eigen::VectorXd::Zero(n);
    auto apply = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
        for (int v : comp) {
            double sum = 0.0;
            auto nbrs = g.in_neighbors(v);
            auto wts = g.in_weights(v);
            for (size_t k = 0; k < nbrs.size(); ++k) sum += wts[k] * in[nbrs[k]];
            out[v] = sum;
        }
    };

    for (int iter = 1; iter <= max_iter; ++iter) {
        apply(x, ax);
        Eigen::VectorXd next = ax + shift * x;
        double norm = 0.0;
        for (int v : comp) norm = std::max(norm, std::abs(next[v]));
        if (norm == 0.0)
            throw ConvergenceError("power iteration collapsed to the zero vector");
        next /= norm;

        double diff = 0.0;
        for (int v : comp) diff = std::max(diff, std::abs(next[v] - x[v]));
        x = next;

        // Rayleigh quotient and residual of the unshifted adjacency.
        apply(x, ax);
        double xax = 0.0, xx = 0.0;
        for (int v : comp) {
            xax += x[v] * ax[v];
            xx += x[v] * x[v];
        }
        const double lambda = xax / xx;
        double residual = 0.0;
        for (int v : comp) residual = std::max(residual, std::abs(ax[v] - lambda * x[v]));

        result.iterations = iter;
        result.eigenvalue = lambda;
        result.residual = residual;
        if (diff < tol && residual < 10.0 * tol) {
            result.loadings = x;
            return result;
        }
    }
    throw ConvergenceError("eigenvector centrality did not converge in " +
                           std::to_string(max_iter) + " iterations (residual " +
                           std::to_string(result.residual) + ")");
}

}  // namespace citefield

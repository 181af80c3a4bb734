#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "citefield/centrality.hpp"
#include "citefield/errors.hpp"
#include "support/oracles.hpp"
#include "support/random_graphs.hpp"

using namespace citefield;

namespace {

Graph star(int n) {
    std::vector<WeightedEdge> edges;
    for (int leaf = 1; leaf < n; ++leaf) edges.push_back({0, leaf, 1.0});
    return Graph::undirected(n, edges);
}

Graph path3() {
    return Graph::undirected(3, std::vector<WeightedEdge>{{0, 1, 1.0}, {1, 2, 1.0}});
}

Graph complete(int n) {
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
    return Graph::undirected(n, edges);
}

}  // namespace

TEST_CASE("degree centrality on stars, complete graphs, and arcs") {
    Graph s = star(5);
    CHECK(degree_centrality(s, 0).normalized == 1.0);
    CHECK(degree_centrality(s, 1).normalized == 0.25);
    CHECK(degree_centrality(s, 0).in == 4);
    CHECK(degree_centrality(s, 0).out == 4);

    Graph k4 = complete(4);
    for (int v = 0; v < 4; ++v) CHECK(degree_centrality(k4, v).normalized == 1.0);

    Graph arc = Graph::directed(2, std::vector<WeightedEdge>{{0, 1, 1.0}});
    const DegreeCentrality a = degree_centrality(arc, 0);
    const DegreeCentrality b = degree_centrality(arc, 1);
    CHECK(a.out == 1);
    CHECK(a.in == 0);
    CHECK(b.out == 0);
    CHECK(b.in == 1);
    CHECK(a.normalized == 0.5);  // one arc out of 2(n-1) possible

    Graph lone = Graph::undirected(1, std::vector<WeightedEdge>{});
    CHECK(degree_centrality(lone, 0).normalized == 0.0);
    CHECK_THROWS_AS(degree_centrality(lone, 3), LookupError);

    auto all = degree_centrality(s);
    REQUIRE(all.size() == 5);
    CHECK(all[0].normalized == 1.0);
}

TEST_CASE("closeness on worked examples") {
    Graph k5 = complete(5);
    Eigen::VectorXd c = closeness_centrality(k5);
    for (int v = 0; v < 5; ++v) CHECK(c[v] == doctest::Approx(1.0).epsilon(1e-12));

    Graph p = path3();
    CHECK(closeness_centrality(p, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(closeness_centrality(p, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(closeness_centrality(p, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    // Isolate in a 4-node graph: one triangle plus a loose node.
    Graph iso = Graph::undirected(
        4, std::vector<WeightedEdge>{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
    CHECK(closeness_centrality(iso, 3) == 0.0);
    // Triangle nodes reach 2 of 3 others at distance 1: (2/3) * (2/2).
    CHECK(closeness_centrality(iso, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    Graph lone = Graph::undirected(1, std::vector<WeightedEdge>{});
    CHECK(closeness_centrality(lone, 0) == 0.0);
}

TEST_CASE("closeness matches the all-pairs oracle on random graphs") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = testing::random_graph(2 + static_cast<int>(rng() % 9), 0.4, rng);
        const Eigen::VectorXd mine = closeness_centrality(g);
        const Eigen::VectorXd oracle = testing::closeness_from_apsp(g);
        for (int v = 0; v < g.size(); ++v)
            CHECK(mine[v] == doctest::Approx(oracle[v]).epsilon(1e-12));
    }
}

TEST_CASE("betweenness on worked examples") {
    Graph p = path3();
    Eigen::VectorXd b = betweenness_centrality(p);
    CHECK(b[0] == 0.0);
    CHECK(b[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b[2] == 0.0);

    Graph s = star(5);
    b = betweenness_centrality(s);
    CHECK(b[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int leaf = 1; leaf < 5; ++leaf) CHECK(b[leaf] == 0.0);

    // 4-cycle: each opposite pair has two geodesics, each midpoint takes 1/2;
    // per node that is 0.5 of the 3 pairs not involving it.
    Graph cycle = Graph::undirected(4, std::vector<WeightedEdge>{
                                           {0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}});
    b = betweenness_centrality(cycle);
    for (int v = 0; v < 4; ++v) CHECK(b[v] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    CHECK(betweenness_centrality(path3()).size() == 3);
    CHECK(betweenness_centrality(Graph::undirected(2, std::vector<WeightedEdge>{{0, 1, 1.0}}))
              .isZero());
    CHECK(betweenness_centrality(Graph::undirected(0, std::vector<WeightedEdge>{})).size() == 0);
}

TEST_CASE("betweenness matches brute force on random connected graphs") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = testing::random_connected_graph(3 + static_cast<int>(rng() % 6), rng);
        const Eigen::VectorXd fast = betweenness_centrality(g);
        const Eigen::VectorXd slow = testing::brute_force_betweenness(g);
        for (int v = 0; v < g.size(); ++v)
            CHECK(fast[v] == doctest::Approx(slow[v]).epsilon(1e-9));
    }
}

TEST_CASE("betweenness and closeness are bitwise thread-count independent") {
    std::mt19937_64 rng(55);
    Graph g = testing::random_connected_graph(40, rng, 0.2);
    const Eigen::VectorXd b1 = betweenness_centrality(g, false, 1);
    const Eigen::VectorXd b4 = betweenness_centrality(g, false, 4);
    const Eigen::VectorXd b3 = betweenness_centrality(g, false, 3);
    REQUIRE(b1.size() == b4.size());
    for (int v = 0; v < g.size(); ++v) {
        CHECK(b1[v] == b4[v]);
        CHECK(b1[v] == b3[v]);
    }
    const Eigen::VectorXd c1 = closeness_centrality(g, false, 1);
    const Eigen::VectorXd c4 = closeness_centrality(g, false, 4);
    for (int v = 0; v < g.size(); ++v) CHECK(c1[v] == c4[v]);
}

TEST_CASE("weighted paths read strong ties as short distances") {
    // Triangle where the direct 0-2 tie is weak (long) and the detour through
    // node 1 is strong (short): hop geodesics and weighted geodesics disagree.
    Graph g = Graph::undirected(
        3, std::vector<WeightedEdge>{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 0.25}});

    Eigen::VectorXd hop_b = betweenness_centrality(g, false);
    CHECK(hop_b[1] == 0.0);  // complete graph: nothing is between

    Eigen::VectorXd weighted_b = betweenness_centrality(g, true);
    CHECK(weighted_b[1] == doctest::Approx(1.0).epsilon(1e-12));

    Eigen::VectorXd weighted_c = closeness_centrality(g, true);
    const Eigen::VectorXd oracle = testing::closeness_from_apsp(g, true);
    for (int v = 0; v < 3; ++v)
        CHECK(weighted_c[v] == doctest::Approx(oracle[v]).epsilon(1e-12));
    // Node 0 reaches 1 at 1.0 and 2 at 2.0 (via 1): (2/2) * (2/3).
    CHECK(weighted_c[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    Graph bad = Graph::undirected(2, std::vector<WeightedEdge>{{0, 1, 0.0}});
    CHECK_THROWS_AS(closeness_centrality(bad, 0, true), Error);
}

TEST_CASE("directed geodesics follow arc direction") {
    Graph g = Graph::directed(3, std::vector<WeightedEdge>{{0, 1, 1.0}, {1, 2, 1.0}});
    Eigen::VectorXd b = betweenness_centrality(g);
    // One ordered pair (0, 2) routes through node 1 out of (n-1)(n-2) = 2.
    CHECK(b[1] == doctest::Approx(0.5).epsilon(1e-12));
    // Out-distances: node 0 reaches both others (1 + 2 = 3): (2/2) * (2/3).
    CHECK(closeness_centrality(g, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(closeness_centrality(g, 2) == 0.0);
}

TEST_CASE("eigenvector centrality on complete and star graphs") {
    Graph k4 = complete(4);
    EigenvectorResult r = eigenvector_centrality(k4);
    for (int v = 0; v < 4; ++v) CHECK(r.loadings[v] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.eigenvalue == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(r.warnings.empty());

    Graph s3 = star(3);
    r = eigenvector_centrality(s3);
    CHECK(r.loadings[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.loadings[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(r.loadings[2] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(r.eigenvalue == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

    const testing::DenseEigenOracle oracle = testing::dense_eigenvector(s3);
    for (int v = 0; v < 3; ++v)
        CHECK(r.loadings[v] == doctest::Approx(oracle.loadings[v]).epsilon(1e-9));
}

TEST_CASE("eigenvector residual stays within the advertised bound") {
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = testing::random_connected_graph(3 + static_cast<int>(rng() % 20), rng);
        const double tol = 1e-10;
        EigenvectorResult r = eigenvector_centrality(g, tol);
        CHECK(r.residual < 10.0 * tol);
        double max_loading = 0.0;
        for (int v = 0; v < g.size(); ++v) {
            CHECK(r.loadings[v] >= 0.0);
            max_loading = std::max(max_loading, r.loadings[v]);
        }
        CHECK(max_loading == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("disconnected eigenvector picks the largest component, ties by smallest id") {
    // Components {0,2} (weight 1) and {1,3} (weight 5): equal sizes, so the
    // component containing node 0 wins regardless of weight.
    Graph g = Graph::undirected(4, std::vector<WeightedEdge>{{0, 2, 1.0}, {1, 3, 5.0}});
    EigenvectorResult r = eigenvector_centrality(g);
    CHECK(r.loadings[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.loadings[2] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.loadings[1] == 0.0);
    CHECK(r.loadings[3] == 0.0);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("largest") != std::string::npos);

    // A strictly larger component wins regardless of position.
    Graph g2 = Graph::undirected(
        5, std::vector<WeightedEdge>{{0, 1, 9.0}, {2, 3, 1.0}, {3, 4, 1.0}});
    r = eigenvector_centrality(g2);
    CHECK(r.loadings[3] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.loadings[0] == 0.0);

    // Size-one component: trivial loading 1.
    Graph lone = Graph::undirected(1, std::vector<WeightedEdge>{});
    CHECK(eigenvector_centrality(lone).loadings[0] == 1.0);
}

TEST_CASE("bipartite structures converge") {
    // Plain power iteration oscillates on stars and even cycles; the shifted
    // iteration must converge and agree with the dense oracle.
    std::vector<Graph> graphs;
    graphs.push_back(star(6));
    graphs.push_back(Graph::undirected(4, std::vector<WeightedEdge>{
                                              {0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}}));
    for (const Graph& g : graphs) {
        EigenvectorResult r = eigenvector_centrality(g);
        const testing::DenseEigenOracle oracle = testing::dense_eigenvector(g);
        CHECK(r.eigenvalue == doctest::Approx(oracle.eigenvalue).epsilon(1e-9));
        for (int v = 0; v < g.size(); ++v)
            CHECK(r.loadings[v] == doctest::Approx(oracle.loadings[v]).epsilon(1e-8));
    }
}

TEST_CASE("all measures are permutation equivariant") {
    std::mt19937_64 rng(808);
    const int n = 9;
    Graph g = testing::random_connected_graph(n, rng);

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);

    // Rebuild with relabeled endpoints (weights follow their edge).
    std::vector<WeightedEdge> relabeled;
    for (int v = 0; v < n; ++v) {
        auto nbrs = g.out_neighbors(v);
        auto wts = g.out_weights(v);
        for (size_t k = 0; k < nbrs.size(); ++k)
            if (v < nbrs[k])
                relabeled.push_back({perm[static_cast<size_t>(v)],
                                     perm[static_cast<size_t>(nbrs[k])], wts[k]});
    }
    Graph h = Graph::undirected(n, relabeled);

    const Eigen::VectorXd bg = betweenness_centrality(g);
    const Eigen::VectorXd bh = betweenness_centrality(h);
    const Eigen::VectorXd cg = closeness_centrality(g);
    const Eigen::VectorXd ch = closeness_centrality(h);
    const EigenvectorResult eg = eigenvector_centrality(g);
    const EigenvectorResult eh = eigenvector_centrality(h);
    for (int v = 0; v < n; ++v) {
        const int pv = perm[static_cast<size_t>(v)];
        CHECK(degree_centrality(g, v).normalized == degree_centrality(h, pv).normalized);
        CHECK(bg[v] == doctest::Approx(bh[pv]).epsilon(1e-12));
        CHECK(cg[v] == doctest::Approx(ch[pv]).epsilon(1e-12));
        CHECK(eg.loadings[v] == doctest::Approx(eh.loadings[pv]).epsilon(1e-8));
    }
}

TEST_CASE("uniform weight scaling leaves unweighted measures and loadings unchanged") {
    std::mt19937_64 rng(9090);
    const int n = 8;
    Graph g = testing::random_connected_graph(n, rng);

    const double alpha = 3.5;
    std::vector<WeightedEdge> scaled;
    for (int v = 0; v < n; ++v) {
        auto nbrs = g.out_neighbors(v);
        auto wts = g.out_weights(v);
        for (size_t k = 0; k < nbrs.size(); ++k)
            if (v < nbrs[k]) scaled.push_back({v, nbrs[k], alpha * wts[k]});
    }
    Graph h = Graph::undirected(n, scaled);

    const Eigen::VectorXd bg = betweenness_centrality(g);
    const Eigen::VectorXd bh = betweenness_centrality(h);
    const Eigen::VectorXd cg = closeness_centrality(g);
    const Eigen::VectorXd ch = closeness_centrality(h);
    for (int v = 0; v < n; ++v) {
        CHECK(degree_centrality(g, v).out == degree_centrality(h, v).out);
        CHECK(bg[v] == bh[v]);
        CHECK(cg[v] == ch[v]);
    }

    const EigenvectorResult eg = eigenvector_centrality(g);
    const EigenvectorResult eh = eigenvector_centrality(h);
    CHECK(eh.eigenvalue == doctest::Approx(alpha * eg.eigenvalue).epsilon(1e-8));
    for (int v = 0; v < n; ++v)
        CHECK(eg.loadings[v] == doctest::Approx(eh.loadings[v]).epsilon(1e-8));
}

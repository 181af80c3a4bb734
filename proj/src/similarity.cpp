#include "citefield/similarity.hpp"

#include <algorithm>

namespace citefield {

std::string_view to_string(Measure measure) {
    return measure == Measure::cosine ? "cosine" : "pearson";
}

Measure parse_measure(std::string_view text) {
    std::string folded = fold_abbrev(text);
    if (folded == "cosine") return Measure::cosine;
    if (folded == "pearson") return Measure::pearson;
    throw Error("unknown measure '" + std::string(text) + "' (expected 'cosine' or 'pearson')");
}

ProfileSet build_profiles(const LocalEnvironment& env, bool keep_diagonal) {
    const int m = env.member_count();
    ProfileSet profiles;
    profiles.members = env.members;
    profiles.mode = env.mode;
    profiles.diagonal_zeroed = !keep_diagonal;
    profiles.labels.reserve(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k)
        profiles.labels.push_back(env.submatrix.registry().record(k).abbrev);

    profiles.vectors = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
        for (int i = 0; i < m; ++i) {
            // Cited mode compares how members are cited (submatrix columns);
            // citing mode compares their reference lists (rows).
            const Count c = env.mode == Mode::cited ? env.submatrix.at(i, k)
                                                    : env.submatrix.at(k, i);
            profiles.vectors(i, k) = static_cast<double>(c);
        }
        if (!keep_diagonal) profiles.vectors(k, k) = 0.0;
    }
    return profiles;
}

namespace {

bool has_defined_profile(const Eigen::MatrixXd& vectors, int k, Measure measure) {
    const Eigen::Index n = vectors.rows();
    if (measure == Measure::cosine) {
        for (Eigen::Index i = 0; i < n; ++i)
            if (vectors(i, k) != 0.0) return true;
        return false;
    }
    // Pearson needs variance; a constant column has none.
    for (Eigen::Index i = 1; i < n; ++i)
        if (vectors(i, k) != vectors(0, k)) return true;
    return false;
}

}  // namespace

SimilarityGraph build_graph(const ProfileSet& profiles, double threshold, Measure measure) {
    if (!(threshold >= -1.0 && threshold <= 1.0))
        throw Error("similarity threshold must lie in [-1, 1]");

    const int m = profiles.member_count();
    SimilarityGraph graph;
    graph.members = profiles.members;
    graph.labels = profiles.labels;
    graph.threshold = threshold;
    graph.measure = measure;

    std::vector<char> defined(static_cast<size_t>(m), 1);
    for (int k = 0; k < m; ++k) {
        if (!has_defined_profile(profiles.vectors, k, measure)) {
            defined[static_cast<size_t>(k)] = 0;
            graph.warnings.push_back(
                "'" + graph.labels[static_cast<size_t>(k)] +
                (measure == Measure::cosine ? "' has a zero citation profile; kept as an isolate"
                                            : "' has a constant citation profile; kept as an isolate"));
        }
    }

    std::vector<char> linked(static_cast<size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
        if (!defined[static_cast<size_t>(i)]) continue;
        for (int j = i + 1; j < m; ++j) {
            if (!defined[static_cast<size_t>(j)]) continue;
            double sim = measure == Measure::cosine
                             ? cosine(profiles.vectors.col(i), profiles.vectors.col(j))
                             : pearson(profiles.vectors.col(i), profiles.vectors.col(j));
            sim = std::clamp(sim, -1.0, 1.0);
            if (sim >= threshold) {
                graph.edges.push_back({i, j, sim});
                linked[static_cast<size_t>(i)] = 1;
                linked[static_cast<size_t>(j)] = 1;
            }
        }
    }

    for (int k = 0; k < m; ++k)
        if (!linked[static_cast<size_t>(k)]) graph.isolates.push_back(k);
    return graph;
}

Graph SimilarityGraph::to_graph() const {
    return Graph::undirected(member_count(), edges);
}

}  // namespace citefield

#pragma once

#include <Eigen/Core>
#include <cmath>
#include <string>
#include <vector>

#include "citefield/environment.hpp"
#include "citefield/errors.hpp"
#include "citefield/graph.hpp"

namespace citefield {

// Cosine of the angle between two vectors: sum(x*y) / (|x| * |y|).
// Accumulation is fixed left-to-right so results are bitwise reproducible
// no matter how callers schedule the surrounding pair loop.
template <typename DerivedX, typename DerivedY>
double cosine(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
    if (x.size() != y.size())
        throw Error("cosine: vector lengths differ (" + std::to_string(x.size()) + " vs " +
                    std::to_string(y.size()) + ")");
    double dot = 0.0, xx = 0.0, yy = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double xi = static_cast<double>(x.derived().coeff(i));
        const double yi = static_cast<double>(y.derived().coeff(i));
        dot += xi * yi;
        xx += xi * xi;
        yy += yi * yi;
    }
    if (xx == 0.0 || yy == 0.0)
        throw UndefinedSimilarityError("cosine undefined for a zero vector");
    return dot / (std::sqrt(xx) * std::sqrt(yy));
}

// Product-moment correlation; equals the cosine of the mean-centered vectors.
template <typename DerivedX, typename DerivedY>
double pearson(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
    if (x.size() != y.size())
        throw Error("pearson: vector lengths differ");
    const Eigen::Index n = x.size();
    if (n < 2)
        throw Error("pearson requires vectors of length >= 2");
    double sx = 0.0, sy = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        sx += static_cast<double>(x.derived().coeff(i));
        sy += static_cast<double>(y.derived().coeff(i));
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double dot = 0.0, xx = 0.0, yy = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double xi = static_cast<double>(x.derived().coeff(i)) - mx;
        const double yi = static_cast<double>(y.derived().coeff(i)) - my;
        dot += xi * yi;
        xx += xi * xi;
        yy += yi * yi;
    }
    if (xx == 0.0 || yy == 0.0)
        throw UndefinedSimilarityError("pearson undefined for zero-variance input");
    return dot / (std::sqrt(xx) * std::sqrt(yy));
}

enum class Measure { cosine, pearson };

std::string_view to_string(Measure measure);
Measure parse_measure(std::string_view text);

// One citation profile per environment member. In cited mode member k's
// vector is the submatrix column of citations it receives; in citing mode the
// row of references it gives. The member's own component is zeroed unless
// keep_diagonal is set.
struct ProfileSet {
    std::vector<int> members;    // parent journal ids
    std::vector<std::string> labels;
    Eigen::MatrixXd vectors;     // column k = profile of member k
    Mode mode = Mode::cited;
    bool diagonal_zeroed = true;

    int member_count() const { return static_cast<int>(members.size()); }
};

ProfileSet build_profiles(const LocalEnvironment& env, bool keep_diagonal = false);

// Undirected similarity graph over environment members. Edges hold the
// measure value; members without a retained edge are listed as isolates,
// never dropped.
struct SimilarityGraph {
    std::vector<int> members;        // parent journal ids
    std::vector<std::string> labels;
    std::vector<WeightedEdge> edges; // source < target, lexicographic order
    double threshold = 0.2;
    Measure measure = Measure::cosine;
    std::vector<int> isolates;       // local indices, ascending
    std::vector<std::string> warnings;

    int member_count() const { return static_cast<int>(members.size()); }
    Graph to_graph() const;
};

// Retains edge (i, j) iff measure(v_i, v_j) >= threshold. Zero-vector members
// (zero-variance for Pearson) get similarity 0 to everyone and a warning.
SimilarityGraph build_graph(const ProfileSet& profiles, double threshold,
                            Measure measure = Measure::cosine);

}  // namespace citefield

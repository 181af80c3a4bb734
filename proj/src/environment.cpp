#include "citefield/environment.hpp"

#include <algorithm>

#include "citefield/errors.hpp"

namespace citefield {

std::string_view to_string(Mode mode) {
    return mode == Mode::cited ? "cited" : "citing";
}

Mode parse_mode(std::string_view text) {
    std::string folded = fold_abbrev(text);
    if (folded == "cited") return Mode::cited;
    if (folded == "citing") return Mode::citing;
    throw Error("unknown mode '" + std::string(text) + "' (expected 'cited' or 'citing')");
}

void EnvironmentSpec::validate(int journal_count) const {
    if (seeds.empty())
        throw Error("environment spec has no seed journals");
    std::set<int> seen;
    for (int seed : seeds) {
        if (seed < 0 || seed >= journal_count)
            throw LookupError("seed id out of range: " + std::to_string(seed));
        if (!seen.insert(seed).second)
            throw Error("duplicate seed id: " + std::to_string(seed));
    }
    if (!(share_threshold >= 0.0) || share_threshold > 1.0)
        throw Error("share threshold must lie in [0, 1]");
}

int LocalEnvironment::local_index(int pid) const {
    auto it = std::lower_bound(members.begin(), members.end(), pid);
    if (it == members.end() || *it != pid)
        throw LookupError("journal id " + std::to_string(pid) + " is not an environment member");
    return static_cast<int>(it - members.begin());
}

int LocalEnvironment::parent_id(int local) const {
    if (local < 0 || local >= member_count())
        throw LookupError("local index out of range: " + std::to_string(local));
    return members[static_cast<size_t>(local)];
}

namespace {

// Count on the seed's relevant axis: the cell linking `other` to `seed` in
// the direction the mode reads.
Count link_count(const CitationMatrix& matrix, Mode mode, int seed, int other) {
    return mode == Mode::cited ? matrix.at(other, seed) : matrix.at(seed, other);
}

Count relevant_total(const CitationMatrix& matrix, Mode mode, int seed) {
    const JournalTotals t = matrix.totals(seed);
    return mode == Mode::cited ? t.cited : t.citing;
}

LocalEnvironment assemble(const CitationMatrix& matrix, const EnvironmentSpec& spec,
                          std::vector<int> members, std::map<int, std::set<int>> provenance,
                          std::vector<std::string> warnings) {
    JournalRegistry registry;
    for (int pid : members) {
        const JournalRecord& rec = matrix.registry().record(pid);
        registry.add(rec.abbrev, rec.title, rec.sources);
    }

    std::vector<Eigen::Triplet<Count>> entries;
    const int m = static_cast<int>(members.size());
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const Count c = matrix.at(members[static_cast<size_t>(i)],
                                      members[static_cast<size_t>(j)]);
            if (c != 0) entries.emplace_back(i, j, c);
        }
    }

    return LocalEnvironment{std::move(members),
                            spec.seeds,
                            spec.mode,
                            spec.share_threshold,
                            CitationMatrix(matrix.year(), std::move(registry), entries),
                            std::move(provenance),
                            std::move(warnings)};
}

// Member ids admitted by one seed's share rule (seed itself excluded here).
std::vector<int> admitted_by(const CitationMatrix& matrix, Mode mode, int seed,
                             double share_threshold, Count total) {
    std::vector<int> admitted;
    const double cutoff = share_threshold * static_cast<double>(total);
    for (int j = 0; j < matrix.size(); ++j) {
        if (j == seed) continue;
        if (static_cast<double>(link_count(matrix, mode, seed, j)) > cutoff)
            admitted.push_back(j);
    }
    return admitted;
}

LocalEnvironment extract_impl(const CitationMatrix& matrix, const EnvironmentSpec& spec,
                              bool tolerate_empty_seeds) {
    spec.validate(matrix.size());

    std::set<int> member_set;
    std::map<int, std::set<int>> provenance;
    std::vector<std::string> warnings;

    for (int seed : spec.seeds) {
        member_set.insert(seed);
        provenance[seed].insert(seed);

        const Count total = relevant_total(matrix, spec.mode, seed);
        if (total == 0) {
            const std::string& abbrev = matrix.registry().record(seed).abbrev;
            if (!tolerate_empty_seeds)
                throw EmptyEnvironmentError("seed '" + abbrev + "' has no " +
                                            std::string(to_string(spec.mode)) + " citations");
            warnings.push_back("seed '" + abbrev + "' has no " +
                               std::string(to_string(spec.mode)) +
                               " citations; kept as an isolate");
            continue;
        }
        for (int j : admitted_by(matrix, spec.mode, seed, spec.share_threshold, total)) {
            member_set.insert(j);
            provenance[j].insert(seed);
        }
    }

    std::vector<int> members(member_set.begin(), member_set.end());
    return assemble(matrix, spec, std::move(members), std::move(provenance),
                    std::move(warnings));
}

}  // namespace

LocalEnvironment extract(const CitationMatrix& matrix, const EnvironmentSpec& spec) {
    if (spec.seeds.size() != 1)
        throw Error("extract expects exactly one seed; use extract_union for several");
    return extract_impl(matrix, spec, /*tolerate_empty_seeds=*/false);
}

LocalEnvironment extract_union(const CitationMatrix& matrix, const EnvironmentSpec& spec) {
    return extract_impl(matrix, spec, /*tolerate_empty_seeds=*/true);
}

}  // namespace citefield

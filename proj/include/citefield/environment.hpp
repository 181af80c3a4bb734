#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "citefield/corpus.hpp"

namespace citefield {

// Direction of the analysis: `cited` looks at citations a journal receives,
// `citing` at the references its articles give.
enum class Mode { cited, citing };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

struct EnvironmentSpec {
    std::vector<int> seeds;            // journal ids in the source matrix
    Mode mode = Mode::cited;
    double share_threshold = 0.01;     // "more than 1%" admission rule

    void validate(int journal_count) const;
};

// A seed-anchored subset of the citation matrix. `members` holds source-matrix
// ids in ascending order; `submatrix` re-indexes them to 0..m-1 in that order.
struct LocalEnvironment {
    std::vector<int> members;               // parent ids, ascending; seeds included
    std::vector<int> seeds;                 // parent ids
    Mode mode = Mode::cited;
    double share_threshold = 0.01;
    CitationMatrix submatrix;
    // Parent member id -> parent seed ids whose share rule admitted it.
    // Seeds carry themselves.
    std::map<int, std::set<int>> provenance;
    std::vector<std::string> warnings;      // isolate seeds, etc.

    int local_index(int parent_id) const;   // throws LookupError if absent
    int parent_id(int local_index) const;
    int member_count() const { return static_cast<int>(members.size()); }
};

// Single-seed extraction. A member is admitted when its citation link with the
// seed strictly exceeds share_threshold of the seed's relevant grand total
// (full-matrix total, not the environment subtotal). A seed whose relevant
// total is zero is an error here; use extract_union to tolerate isolates.
LocalEnvironment extract(const CitationMatrix& matrix, const EnvironmentSpec& spec);

// Union of per-seed environments. Seeds with zero relevant totals are retained
// as isolate members and a warning is recorded.
LocalEnvironment extract_union(const CitationMatrix& matrix, const EnvironmentSpec& spec);

}  // namespace citefield

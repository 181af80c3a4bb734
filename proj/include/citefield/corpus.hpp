#pragma once

#include <Eigen/SparseCore>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace citefield {

using Count = std::int64_t;
using CountVector = Eigen::Matrix<Count, Eigen::Dynamic, 1>;
// Row index = citing journal, column index = cited journal.
using CountMatrix = Eigen::SparseMatrix<Count>;

// Canonical identity key: case-folded (ASCII) and whitespace-trimmed.
std::string fold_abbrev(std::string_view abbrev);

struct JournalRecord {
    int id = -1;
    std::string title;
    std::string abbrev;
    std::set<std::string> sources;
};

// Journal identities with dense contiguous ids, keyed by folded abbreviation.
class JournalRegistry {
public:
    // Returns the id, creating a record on first sight of the abbreviation.
    // Repeated adds union the source tags; the first non-empty title sticks.
    int add(std::string_view abbrev, std::string_view title = {},
            const std::set<std::string>& sources = {});

    std::optional<int> find(std::string_view abbrev) const;
    int require(std::string_view abbrev) const;  // throws LookupError

    const JournalRecord& record(int id) const;
    int size() const { return static_cast<int>(records_.size()); }
    const std::vector<JournalRecord>& records() const { return records_; }

private:
    std::vector<JournalRecord> records_;
    std::map<std::string, int> by_key_;
};

struct MergeResult {
    JournalRegistry merged;
    std::vector<std::string> warnings;  // e.g. conflicting titles
};

// Unifies records with equal folded abbreviations; source tags are unioned,
// the first registry's title wins on conflict (a warning is recorded).
MergeResult merge_registries(const JournalRegistry& a, const JournalRegistry& b);

struct JournalTotals {
    Count cited = 0;   // column sum, diagonal included
    Count citing = 0;  // row sum, diagonal included
    Count self = 0;    // diagonal entry
};

// Aggregated journal-journal citation counts for one data year. Immutable
// after construction; safe to share across concurrent readers.
class CitationMatrix {
public:
    CitationMatrix(int year, JournalRegistry registry,
                   std::span<const Eigen::Triplet<Count>> entries);

    int year() const { return year_; }
    int size() const { return static_cast<int>(counts_.rows()); }
    const JournalRegistry& registry() const { return registry_; }
    const CountMatrix& counts() const { return counts_; }

    Count at(int citing, int cited) const;
    JournalTotals totals(int journal) const;
    Count grand_total() const { return grand_total_; }

private:
    int year_ = 0;
    JournalRegistry registry_;
    CountMatrix counts_;
    CountVector row_sums_, col_sums_, diagonal_;
    Count grand_total_ = 0;
};

// CSV edge list (header `citing,cited,count`). Duplicate (citing, cited) rows
// are summed. When `source_tag` is non-empty every journal gets that tag.
CitationMatrix load_edge_list(const std::filesystem::path& path, int year,
                              std::string_view source_tag = {});

// Re-exports in the same CSV format, rows sorted by (citing, cited) id.
void save_edge_list(const CitationMatrix& matrix, const std::filesystem::path& path);

// Citations received by one journal's publication-year cohort, bucketed by
// age = citing_year - published_year.
struct CitableRecord {
    std::string journal;  // display abbreviation
    int year = 0;         // publication year
    Count citable_items = 0;
    std::map<int, Count> cites_by_age;
    std::map<int, Count> self_cites_by_age;
};

// Publication year -> record, for a single journal.
using CitableHistory = std::map<int, CitableRecord>;

struct CitableTable {
    // Folded abbreviation -> per-year history.
    std::map<std::string, CitableHistory> by_journal;

    const CitableHistory* find(std::string_view abbrev) const;
};

// CSV `journal,year,citable_items,age,cites,self_cites`, one row per
// (journal, year, age). Duplicate (journal, year, age) rows are summed;
// conflicting citable_items for the same (journal, year) are an error.
CitableTable load_citable_records(const std::filesystem::path& path);

}  // namespace citefield

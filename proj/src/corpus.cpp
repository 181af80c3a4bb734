#include "citefield/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "citefield/errors.hpp"

namespace citefield {

namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// One CSV record, RFC-4180 quoting: fields may be wrapped in double quotes,
// embedded quotes are doubled. Unquoted fields are whitespace-trimmed.
std::vector<std::string> split_csv(const std::string& line, const std::string& file,
                                   long line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    bool was_quoted = false;
    size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    i += 2;
                    continue;
                }
                quoted = false;
                ++i;
                continue;
            }
            cur += c;
            ++i;
            continue;
        }
        if (c == '"' && trim(cur).empty() && !was_quoted) {
            quoted = true;
            was_quoted = true;
            cur.clear();
            ++i;
            continue;
        }
        if (c == ',') {
            fields.push_back(was_quoted ? cur : trim(cur));
            cur.clear();
            was_quoted = false;
            ++i;
            continue;
        }
        cur += c;
        ++i;
    }
    if (quoted)
        throw ParseError(file, line_no, "unterminated quoted field");
    fields.push_back(was_quoted ? cur : trim(cur));
    return fields;
}

long long parse_count(const std::string& text, const std::string& file, long line_no,
                      const char* what) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError(file, line_no, std::string(what) + " is not an integer: '" + text + "'");
    if (value < 0)
        throw ParseError(file, line_no, std::string(what) + " is negative: '" + text + "'");
    return value;
}

int parse_year_field(const std::string& text, const std::string& file, long line_no,
                     const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError(file, line_no, std::string(what) + " is not an integer: '" + text + "'");
    return value;
}

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\n") != std::string::npos ||
           (!field.empty() && (std::isspace(static_cast<unsigned char>(field.front())) ||
                               std::isspace(static_cast<unsigned char>(field.back()))));
}

std::string csv_escape(const std::string& field) {
    if (!needs_quoting(field)) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string fold_abbrev(std::string_view abbrev) {
    std::string key = trim(abbrev);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return key;
}

int JournalRegistry::add(std::string_view abbrev, std::string_view title,
                         const std::set<std::string>& sources) {
    std::string key = fold_abbrev(abbrev);
    if (key.empty())
        throw Error("journal abbreviation is empty");
    auto it = by_key_.find(key);
    if (it == by_key_.end()) {
        JournalRecord rec;
        rec.id = static_cast<int>(records_.size());
        rec.abbrev = trim(abbrev);
        rec.title = trim(title);
        rec.sources = sources;
        records_.push_back(std::move(rec));
        by_key_.emplace(std::move(key), records_.back().id);
        return records_.back().id;
    }
    JournalRecord& rec = records_[static_cast<size_t>(it->second)];
    if (rec.title.empty() && !title.empty())
        rec.title = trim(title);
    rec.sources.insert(sources.begin(), sources.end());
    return it->second;
}

std::optional<int> JournalRegistry::find(std::string_view abbrev) const {
    auto it = by_key_.find(fold_abbrev(abbrev));
    if (it == by_key_.end()) return std::nullopt;
    return it->second;
}

int JournalRegistry::require(std::string_view abbrev) const {
    if (auto id = find(abbrev)) return *id;
    throw LookupError("unknown journal: '" + std::string(abbrev) + "'");
}

const JournalRecord& JournalRegistry::record(int id) const {
    if (id < 0 || id >= size())
        throw LookupError("journal id out of range: " + std::to_string(id));
    return records_[static_cast<size_t>(id)];
}

MergeResult merge_registries(const JournalRegistry& a, const JournalRegistry& b) {
    MergeResult result;
    for (const JournalRecord& rec : a.records())
        result.merged.add(rec.abbrev, rec.title, rec.sources);
    for (const JournalRecord& rec : b.records()) {
        int id = result.merged.add(rec.abbrev, rec.title, rec.sources);
        const JournalRecord& kept = result.merged.record(id);
        if (!rec.title.empty() && !kept.title.empty() && kept.title != rec.title)
            result.warnings.push_back("conflicting titles for '" + kept.abbrev + "': kept '" +
                                      kept.title + "', ignored '" + rec.title + "'");
    }
    return result;
}

CitationMatrix::CitationMatrix(int year, JournalRegistry registry,
                               std::span<const Eigen::Triplet<Count>> entries)
    : year_(year), registry_(std::move(registry)) {
    const int n = registry_.size();
    counts_.resize(n, n);
    // setFromTriplets sums duplicates, which is the wanted aggregation.
    counts_.setFromTriplets(entries.begin(), entries.end());
    counts_.makeCompressed();

    row_sums_ = CountVector::Zero(n);
    col_sums_ = CountVector::Zero(n);
    diagonal_ = CountVector::Zero(n);
    for (int k = 0; k < counts_.outerSize(); ++k) {
        for (CountMatrix::InnerIterator it(counts_, k); it; ++it) {
            row_sums_[it.row()] += it.value();
            col_sums_[it.col()] += it.value();
            if (it.row() == it.col()) diagonal_[it.row()] += it.value();
            grand_total_ += it.value();
        }
    }
}

Count CitationMatrix::at(int citing, int cited) const {
    if (citing < 0 || citing >= size() || cited < 0 || cited >= size())
        throw LookupError("citation index out of range");
    return counts_.coeff(citing, cited);
}

JournalTotals CitationMatrix::totals(int journal) const {
    if (journal < 0 || journal >= size())
        throw LookupError("journal id out of range: " + std::to_string(journal));
    return JournalTotals{col_sums_[journal], row_sums_[journal], diagonal_[journal]};
}

CitationMatrix load_edge_list(const std::filesystem::path& path, int year,
                              std::string_view source_tag) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open edge list: " + path.string());
    const std::string file = path.string();

    std::set<std::string> sources;
    if (!source_tag.empty()) sources.insert(std::string(source_tag));

    JournalRegistry registry;
    // (citing, cited) -> count; journal ids are assigned in first-seen order.
    std::vector<Eigen::Triplet<Count>> entries;

    std::string line;
    long line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto fields = split_csv(line, file, line_no);
        if (!header_seen) {
            if (fields.size() != 3 || fold_abbrev(fields[0]) != "citing" ||
                fold_abbrev(fields[1]) != "cited" || fold_abbrev(fields[2]) != "count")
                throw ParseError(file, line_no, "expected header 'citing,cited,count'");
            header_seen = true;
            continue;
        }
        if (fields.size() != 3)
            throw ParseError(file, line_no,
                             "expected 3 fields, got " + std::to_string(fields.size()));
        if (trim(fields[0]).empty() || trim(fields[1]).empty())
            throw ParseError(file, line_no, "empty journal abbreviation");
        const int citing = registry.add(fields[0], {}, sources);
        const int cited = registry.add(fields[1], {}, sources);
        const Count count = parse_count(fields[2], file, line_no, "count");
        entries.emplace_back(citing, cited, count);
    }
    if (!header_seen)
        throw ParseError(file, 0, "file is empty (header 'citing,cited,count' required)");
    if (entries.empty())
        throw ParseError(file, line_no, "no data rows after header");
    return CitationMatrix(year, std::move(registry), entries);
}

void save_edge_list(const CitationMatrix& matrix, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write edge list: " + path.string());
    out << "citing,cited,count\n";
    // Column-major storage; collect and sort so rows group by citing journal.
    struct Row {
        int citing, cited;
        Count count;
    };
    std::vector<Row> rows;
    const CountMatrix& m = matrix.counts();
    for (int k = 0; k < m.outerSize(); ++k)
        for (CountMatrix::InnerIterator it(m, k); it; ++it)
            if (it.value() != 0)
                rows.push_back({static_cast<int>(it.row()), static_cast<int>(it.col()),
                                it.value()});
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.citing, a.cited) < std::tie(b.citing, b.cited);
    });
    for (const Row& r : rows) {
        out << csv_escape(matrix.registry().record(r.citing).abbrev) << ','
            << csv_escape(matrix.registry().record(r.cited).abbrev) << ',' << r.count << '\n';
    }
    if (!out)
        throw IoError("write failed: " + path.string());
}

const CitableHistory* CitableTable::find(std::string_view abbrev) const {
    auto it = by_journal.find(fold_abbrev(abbrev));
    if (it == by_journal.end()) return nullptr;
    return &it->second;
}

CitableTable load_citable_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open citable records: " + path.string());
    const std::string file = path.string();

    CitableTable table;
    std::string line;
    long line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto fields = split_csv(line, file, line_no);
        if (!header_seen) {
            if (fields.size() != 6 || fold_abbrev(fields[0]) != "journal" ||
                fold_abbrev(fields[1]) != "year" || fold_abbrev(fields[2]) != "citable_items" ||
                fold_abbrev(fields[3]) != "age" || fold_abbrev(fields[4]) != "cites" ||
                fold_abbrev(fields[5]) != "self_cites")
                throw ParseError(file, line_no,
                                 "expected header 'journal,year,citable_items,age,cites,self_cites'");
            header_seen = true;
            continue;
        }
        if (fields.size() != 6)
            throw ParseError(file, line_no,
                             "expected 6 fields, got " + std::to_string(fields.size()));
        if (trim(fields[0]).empty())
            throw ParseError(file, line_no, "empty journal abbreviation");
        const int year = parse_year_field(fields[1], file, line_no, "year");
        const Count citable = parse_count(fields[2], file, line_no, "citable_items");
        const int age = static_cast<int>(parse_count(fields[3], file, line_no, "age"));
        const Count cites = parse_count(fields[4], file, line_no, "cites");
        const Count self = parse_count(fields[5], file, line_no, "self_cites");
        if (self > cites)
            throw ParseError(file, line_no,
                             "self_cites (" + std::to_string(self) + ") exceeds cites (" +
                                 std::to_string(cites) + ")");

        CitableHistory& history = table.by_journal[fold_abbrev(fields[0])];
        auto [it, inserted] = history.try_emplace(year);
        CitableRecord& rec = it->second;
        if (inserted) {
            rec.journal = trim(fields[0]);
            rec.year = year;
            rec.citable_items = citable;
        } else if (rec.citable_items != citable) {
            throw ParseError(file, line_no,
                             "conflicting citable_items for " + rec.journal + " " +
                                 std::to_string(year) + ": " + std::to_string(rec.citable_items) +
                                 " vs " + std::to_string(citable));
        }
        rec.cites_by_age[age] += cites;
        rec.self_cites_by_age[age] += self;
    }
    if (!header_seen)
        throw ParseError(file, 0,
                         "file is empty (header 'journal,year,citable_items,age,cites,self_cites' required)");
    return table;
}

}  // namespace citefield

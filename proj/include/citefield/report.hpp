#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "citefield/centrality.hpp"
#include "citefield/json_io.hpp"
#include "citefield/render.hpp"

namespace citefield {

// Effective parameters of one invocation. Defaults follow the standard
// analysis choices: 1% share rule, cosine >= 0.2, cited mode.
struct RunConfig {
    std::string edges_path;
    std::string citable_path;
    std::string matrix_path;     // JSON intermediate, alternative to edges_path
    std::string env_path;
    std::string graph_path;
    std::string source_tag;

    int year = 0;
    std::vector<std::string> seeds;  // abbreviations, resolved case-insensitively
    Mode mode = Mode::cited;
    double share_threshold = 0.01;
    double cosine_threshold = 0.2;
    Measure measure = Measure::cosine;
    bool keep_diagonal = false;
    bool weighted_paths = false;
    bool percent = false;            // scale table fractions to percentages
    std::string annotate;            // "betweenness" or empty
    std::uint64_t layout_seed = 42;
    int layout_iterations = 500;
    int if_window = 2;
    int threads = 0;                 // 0 = automatic
    std::vector<std::string> measures = {"degree", "closeness", "betweenness",
                                         "eigenvector"};

    std::string output;   // file path; empty = stdout for JSON-emitting commands
    std::string outdir;   // report artifact directory
    std::string format = "svg";
};

// Fingerprint of the analysis parameters (paths excluded, so the same
// analysis hashes identically wherever the files live).
std::string config_hash(const RunConfig& config);

struct TableRow {
    std::string journal;
    std::optional<double> betweenness;  // fraction in [0,1]
    std::optional<double> closeness;
    std::optional<double> impact_factor;
};

struct ReportResult {
    LocalEnvironment environment;
    SimilarityGraph graph;
    RenderedMap map;
    ordered_json report;          // validates against docs/schemas/report.schema.json
    std::vector<TableRow> table;  // one row per seed, in the requested order
};

// Full pipeline: load -> environment -> similarity graph -> centrality ->
// indicators -> layout -> rendered map + report document.
ReportResult run_report(const RunConfig& config);

// Aligned-text table in the fixed column order: journal, betweenness,
// closeness, impact factor. `percent` scales the centrality columns by 100.
std::string format_table(const std::vector<TableRow>& rows, bool percent);

}  // namespace citefield

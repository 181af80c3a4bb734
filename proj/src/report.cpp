#include "citefield/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include "citefield/errors.hpp"
#include "citefield/indicators.hpp"
#include "citefield/version.hpp"

namespace citefield {

namespace {

std::string fmt(const char* spec, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, value);
    return buf;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ',';
        out += parts[i];
    }
    return out;
}

}  // namespace

std::string config_hash(const RunConfig& config) {
    // Only parameters that shape the numbers are hashed; file locations and
    // thread counts leave results untouched and would break fingerprint
    // stability across machines.
    std::string canon;
    canon += "year=" + std::to_string(config.year);
    canon += ";mode=" + std::string(to_string(config.mode));
    canon += ";share=" + fmt("%.9g", config.share_threshold);
    canon += ";measure=" + std::string(to_string(config.measure));
    canon += ";threshold=" + fmt("%.9g", config.cosine_threshold);
    canon += ";keep_diagonal=" + std::to_string(config.keep_diagonal ? 1 : 0);
    canon += ";weighted_paths=" + std::to_string(config.weighted_paths ? 1 : 0);
    std::vector<std::string> folded;
    folded.reserve(config.seeds.size());
    for (const std::string& s : config.seeds) folded.push_back(fold_abbrev(s));
    canon += ";seeds=" + join(folded);
    canon += ";layout_seed=" + std::to_string(config.layout_seed);
    canon += ";layout_iterations=" + std::to_string(config.layout_iterations);
    canon += ";if_window=" + std::to_string(config.if_window);
    canon += ";annotate=" + config.annotate;
    canon += ";percent=" + std::to_string(config.percent ? 1 : 0);
    canon += ";measures=" + join(config.measures);
    return hex64(fnv1a64(canon));
}

namespace {

CitationMatrix load_input_matrix(const RunConfig& config) {
    if (!config.matrix_path.empty())
        return matrix_from_json(load_json(config.matrix_path));
    if (config.edges_path.empty())
        throw Error("no input: provide an edge-list CSV or a matrix JSON document");
    if (config.year == 0)
        throw Error("a data year is required when loading an edge-list CSV");
    return load_edge_list(config.edges_path, config.year, config.source_tag);
}

ordered_json optional_number(const std::optional<double>& value) {
    return value ? ordered_json(*value) : ordered_json(nullptr);
}

}  // namespace

ReportResult run_report(const RunConfig& config) {
    RunConfig cfg = config;
    CitationMatrix matrix = load_input_matrix(cfg);
    if (cfg.year == 0) cfg.year = matrix.year();
    const std::string hash = config_hash(cfg);

    if (cfg.seeds.empty())
        throw Error("at least one seed journal is required");
    EnvironmentSpec spec;
    spec.mode = cfg.mode;
    spec.share_threshold = cfg.share_threshold;
    for (const std::string& s : cfg.seeds)
        spec.seeds.push_back(matrix.registry().require(s));

    LocalEnvironment env = extract_union(matrix, spec);
    ProfileSet profiles = build_profiles(env, cfg.keep_diagonal);
    SimilarityGraph sim = build_graph(profiles, cfg.cosine_threshold, cfg.measure);
    Graph g = sim.to_graph();

    const int m = env.member_count();
    std::vector<DegreeCentrality> degrees = degree_centrality(g);
    Eigen::VectorXd closeness = closeness_centrality(g, cfg.weighted_paths, cfg.threads);
    Eigen::VectorXd betweenness = betweenness_centrality(g, cfg.weighted_paths, cfg.threads);
    EigenvectorResult eig = eigenvector_centrality(g);

    LayoutConfig layout_config;
    layout_config.iterations = cfg.layout_iterations;
    Coordinates coords = layout(sim, cfg.layout_seed, layout_config);

    Eigen::VectorXd betweenness_percent = betweenness * 100.0;
    RenderedMap map = build_map(env, sim, coords, cfg.layout_seed, cfg.layout_iterations, {},
                                cfg.annotate == "betweenness" ? &betweenness_percent : nullptr);
    map.config_hash = hash;

    // Impact factors are best-effort per journal: a member without citable
    // records (or with a zero-item window) reports null rather than failing
    // the whole run.
    std::vector<std::optional<ImpactReport>> impact(static_cast<size_t>(m));
    if (!cfg.citable_path.empty()) {
        CitableTable citable = load_citable_records(cfg.citable_path);
        for (int k = 0; k < m; ++k) {
            const std::string& abbrev = env.submatrix.registry().record(k).abbrev;
            if (const CitableHistory* history = citable.find(abbrev)) {
                try {
                    impact[static_cast<size_t>(k)] = impact_factor(*history, cfg.year, cfg.if_window);
                } catch (const MissingDataError&) {
                } catch (const UndefinedIndicatorError&) {
                }
            }
        }
    }

    // h-index over the environment column of citations received from other
    // members ("cited by others"; the diagonal is excluded).
    std::vector<Count> h(static_cast<size_t>(m), 0);
    for (int k = 0; k < m; ++k) {
        std::vector<Count> received;
        received.reserve(static_cast<size_t>(m) - 1);
        for (int i = 0; i < m; ++i)
            if (i != k) received.push_back(env.submatrix.at(i, k));
        h[static_cast<size_t>(k)] = h_index(received);
    }

    std::vector<TableRow> table;
    table.reserve(spec.seeds.size());
    for (int seed : spec.seeds) {
        const int local = env.local_index(seed);
        TableRow row;
        row.journal = env.submatrix.registry().record(local).abbrev;
        row.betweenness = betweenness[local];
        row.closeness = closeness[local];
        if (impact[static_cast<size_t>(local)])
            row.impact_factor = impact[static_cast<size_t>(local)]->impact_factor;
        table.push_back(std::move(row));
    }

    ordered_json rep;
    rep["meta"] = meta_block(hash);
    rep["meta"]["layout"] = {{"algorithm", kLayoutAlgorithm},
                             {"seed", cfg.layout_seed},
                             {"iterations", cfg.layout_iterations}};
    rep["year"] = cfg.year;
    rep["mode"] = to_string(cfg.mode);
    rep["share_threshold"] = cfg.share_threshold;
    rep["measure"] = to_string(cfg.measure);
    rep["similarity_threshold"] = cfg.cosine_threshold;
    rep["keep_diagonal"] = cfg.keep_diagonal;
    rep["weighted_paths"] = cfg.weighted_paths;

    rep["seeds"] = ordered_json::array();
    for (int seed : spec.seeds)
        rep["seeds"].push_back(env.submatrix.registry().record(env.local_index(seed)).abbrev);

    ordered_json envj;
    envj["members"] = ordered_json::array();
    for (int k = 0; k < m; ++k)
        envj["members"].push_back(env.submatrix.registry().record(k).abbrev);
    envj["isolates"] = ordered_json::array();
    for (int local : sim.isolates)
        envj["isolates"].push_back(env.submatrix.registry().record(local).abbrev);
    std::vector<std::string> warnings = env.warnings;
    warnings.insert(warnings.end(), sim.warnings.begin(), sim.warnings.end());
    warnings.insert(warnings.end(), eig.warnings.begin(), eig.warnings.end());
    envj["warnings"] = warnings;
    rep["environment"] = std::move(envj);

    rep["table"] = ordered_json::array();
    for (const TableRow& row : table) {
        ordered_json rj;
        rj["journal"] = row.journal;
        rj["betweenness_percent"] = row.betweenness ? ordered_json(*row.betweenness * 100.0)
                                                    : ordered_json(nullptr);
        rj["closeness_percent"] = row.closeness ? ordered_json(*row.closeness * 100.0)
                                                : ordered_json(nullptr);
        rj["impact_factor"] = optional_number(row.impact_factor);
        rep["table"].push_back(std::move(rj));
    }

    rep["journals"] = ordered_json::array();
    for (int k = 0; k < m; ++k) {
        const JournalTotals totals = env.submatrix.totals(k);
        const auto& rec = impact[static_cast<size_t>(k)];
        ordered_json jj;
        jj["journal"] = env.submatrix.registry().record(k).abbrev;
        jj["in_degree"] = degrees[static_cast<size_t>(k)].in;
        jj["out_degree"] = degrees[static_cast<size_t>(k)].out;
        jj["degree_normalized"] = degrees[static_cast<size_t>(k)].normalized;
        jj["closeness"] = closeness[k];
        jj["betweenness"] = betweenness[k];
        jj["eigenvector"] = eig.loadings[k];
        jj["impact_factor"] = rec ? ordered_json(rec->impact_factor) : ordered_json(nullptr);
        jj["quasi_impact_factor"] =
            rec ? ordered_json(rec->quasi_impact_factor) : ordered_json(nullptr);
        jj["h_index"] = h[static_cast<size_t>(k)];
        jj["total_cited"] = totals.cited;
        jj["total_citing"] = totals.citing;
        jj["self_citations"] = totals.self;
        rep["journals"].push_back(std::move(jj));
    }

    return ReportResult{std::move(env), std::move(sim), std::move(map), std::move(rep),
                        std::move(table)};
}

std::string format_table(const std::vector<TableRow>& rows, bool percent) {
    const std::string headers[4] = {
        "journal", percent ? "betweenness (%)" : "betweenness",
        percent ? "closeness (%)" : "closeness", "impact factor"};

    auto centrality_cell = [&](const std::optional<double>& value) -> std::string {
        if (!value) return "n/a";
        return percent ? fmt("%.2f", *value * 100.0) : fmt("%.4f", *value);
    };
    auto impact_cell = [](const std::optional<double>& value) -> std::string {
        return value ? fmt("%.4f", *value) : "n/a";
    };

    std::vector<std::array<std::string, 4>> cells;
    cells.reserve(rows.size());
    for (const TableRow& row : rows)
        cells.push_back({row.journal, centrality_cell(row.betweenness),
                         centrality_cell(row.closeness), impact_cell(row.impact_factor)});

    size_t width[4];
    for (int c = 0; c < 4; ++c) {
        width[c] = headers[c].size();
        for (const auto& row : cells) width[c] = std::max(width[c], row[static_cast<size_t>(c)].size());
    }

    std::string out;
    auto emit = [&](const std::string* fields) {
        for (int c = 0; c < 4; ++c) {
            const std::string& cell = fields[c];
            if (c == 0) {
                out += cell;
                out.append(width[0] - cell.size(), ' ');
            } else {
                out += "  ";
                out.append(width[c] - cell.size(), ' ');
                out += cell;
            }
        }
        out += '\n';
    };
    emit(headers);
    for (const auto& row : cells) emit(row.data());
    return out;
}

}  // namespace citefield

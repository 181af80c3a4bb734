#include "citefield/cli.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "citefield/errors.hpp"
#include "citefield/indicators.hpp"
#include "citefield/report.hpp"
#include "citefield/version.hpp"

namespace citefield {

namespace {

// Bad invocation rather than bad data; mapped to exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::optional<std::string> find_config_arg(int argc, const char* const* argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string_view arg = argv[i];
        if (arg == "--config") {
            if (i + 1 >= argc)
                throw UsageError("--config requires a file path");
            return std::string(argv[i + 1]);
        }
        if (arg.rfind("--config=", 0) == 0)
            return std::string(arg.substr(9));
    }
    return std::nullopt;
}

// Config-file values become the new defaults; explicit flags still win.
void apply_config_file(RunConfig& cfg, const std::string& path) {
    ordered_json doc;
    try {
        doc = load_json(path);
    } catch (const Error& e) {
        throw UsageError(std::string("config file: ") + e.what());
    }
    if (!doc.is_object())
        throw UsageError("config file must hold a JSON object");

    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "edges") cfg.edges_path = value.get<std::string>();
            else if (key == "citable") cfg.citable_path = value.get<std::string>();
            else if (key == "matrix") cfg.matrix_path = value.get<std::string>();
            else if (key == "env") cfg.env_path = value.get<std::string>();
            else if (key == "graph") cfg.graph_path = value.get<std::string>();
            else if (key == "source") cfg.source_tag = value.get<std::string>();
            else if (key == "year") cfg.year = value.get<int>();
            else if (key == "seeds") {
                cfg.seeds.clear();
                if (value.is_string()) {
                    // Comma-joined form, same as the command line.
                    std::string s = value.get<std::string>();
                    size_t start = 0;
                    while (start <= s.size()) {
                        size_t comma = s.find(',', start);
                        if (comma == std::string::npos) comma = s.size();
                        if (comma > start) cfg.seeds.push_back(s.substr(start, comma - start));
                        start = comma + 1;
                    }
                } else {
                    cfg.seeds = value.get<std::vector<std::string>>();
                }
            } else if (key == "mode") cfg.mode = parse_mode(value.get<std::string>());
            else if (key == "share") cfg.share_threshold = value.get<double>();
            else if (key == "threshold_cosine") cfg.cosine_threshold = value.get<double>();
            else if (key == "measure") cfg.measure = parse_measure(value.get<std::string>());
            else if (key == "keep_diagonal") cfg.keep_diagonal = value.get<bool>();
            else if (key == "weighted_paths") cfg.weighted_paths = value.get<bool>();
            else if (key == "percent") cfg.percent = value.get<bool>();
            else if (key == "annotate") cfg.annotate = value.get<std::string>();
            else if (key == "layout_seed") cfg.layout_seed = value.get<std::uint64_t>();
            else if (key == "layout_iterations") cfg.layout_iterations = value.get<int>();
            else if (key == "window") cfg.if_window = value.get<int>();
            else if (key == "threads") cfg.threads = value.get<int>();
            else if (key == "measures") cfg.measures = value.get<std::vector<std::string>>();
            else if (key == "output") cfg.output = value.get<std::string>();
            else if (key == "outdir") cfg.outdir = value.get<std::string>();
            else if (key == "format") cfg.format = value.get<std::string>();
            else throw UsageError("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config file: ") + e.what());
    } catch (const Error& e) {
        throw UsageError(std::string("config file: ") + e.what());
    }
}

void emit_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

void write_json_output(const ordered_json& j, const std::string& path) {
    if (path.empty() || path == "-")
        std::cout << j.dump(2) << "\n";
    else
        write_json(j, path);
}

CitationMatrix load_matrix_input(const RunConfig& cfg) {
    if (!cfg.matrix_path.empty())
        return matrix_from_json(load_json(cfg.matrix_path));
    if (cfg.edges_path.empty())
        throw UsageError("an input is required: --edges <csv> (with --year) or --matrix <json>");
    if (cfg.year == 0)
        throw UsageError("--year is required when reading an edge-list CSV");
    return load_edge_list(cfg.edges_path, cfg.year, cfg.source_tag);
}

LocalEnvironment load_environment_input(RunConfig& cfg) {
    if (!cfg.env_path.empty()) {
        LocalEnvironment env = environment_from_json(load_json(cfg.env_path));
        if (cfg.year == 0) cfg.year = env.submatrix.year();
        cfg.mode = env.mode;
        cfg.share_threshold = env.share_threshold;
        return env;
    }
    CitationMatrix matrix = load_matrix_input(cfg);
    if (cfg.year == 0) cfg.year = matrix.year();
    if (cfg.seeds.empty())
        throw UsageError("at least one seed journal is required (--seed)");
    EnvironmentSpec spec;
    spec.mode = cfg.mode;
    spec.share_threshold = cfg.share_threshold;
    for (const std::string& s : cfg.seeds)
        spec.seeds.push_back(matrix.registry().require(s));
    return spec.seeds.size() == 1 ? extract(matrix, spec) : extract_union(matrix, spec);
}

int cmd_ingest(RunConfig cfg, const std::vector<std::string>& edges,
               const std::vector<std::string>& sources) {
    if (edges.empty())
        throw UsageError("--edges is required");
    if (!sources.empty() && sources.size() != edges.size())
        throw UsageError("--source count must match --edges count");
    if (cfg.year == 0)
        throw UsageError("--year is required");

    JournalRegistry registry;
    std::vector<Eigen::Triplet<Count>> entries;
    for (size_t i = 0; i < edges.size(); ++i) {
        const std::string tag = sources.empty() ? cfg.source_tag : sources[i];
        CitationMatrix part = load_edge_list(edges[i], cfg.year, tag);
        MergeResult merged = merge_registries(registry, part.registry());
        emit_warnings(merged.warnings);
        registry = std::move(merged.merged);
        // Re-key this file's entries into the merged id space.
        const CountMatrix& counts = part.counts();
        for (int k = 0; k < counts.outerSize(); ++k) {
            for (CountMatrix::InnerIterator it(counts, k); it; ++it) {
                const int citing =
                    registry.require(part.registry().record(static_cast<int>(it.row())).abbrev);
                const int cited =
                    registry.require(part.registry().record(static_cast<int>(it.col())).abbrev);
                entries.emplace_back(citing, cited, it.value());
            }
        }
    }
    CitationMatrix matrix(cfg.year, std::move(registry), entries);
    write_json_output(matrix_to_json(matrix, config_hash(cfg)), cfg.output);
    return 0;
}

int cmd_indicators(RunConfig cfg, const std::vector<std::string>& journals) {
    if (cfg.citable_path.empty())
        throw UsageError("--citable is required");
    if (cfg.year == 0)
        throw UsageError("--year is required");

    CitableTable table = load_citable_records(cfg.citable_path);
    std::vector<const CitableHistory*> picked;
    std::vector<std::string> names;
    if (journals.empty()) {
        for (const auto& [key, history] : table.by_journal) {
            picked.push_back(&history);
            names.push_back(history.begin()->second.journal);
        }
    } else {
        for (const std::string& j : journals) {
            const CitableHistory* history = table.find(j);
            if (!history)
                throw LookupError("no citable records for journal '" + j + "'");
            picked.push_back(history);
            names.push_back(history->begin()->second.journal);
        }
    }

    ordered_json out;
    out["meta"] = meta_block(config_hash(cfg));
    out["year"] = cfg.year;
    out["window"] = cfg.if_window;
    out["indicators"] = ordered_json::array();
    for (size_t i = 0; i < picked.size(); ++i) {
        ImpactReport report = impact_factor(*picked[i], cfg.year, cfg.if_window);
        out["indicators"].push_back({{"journal", names[i]},
                                     {"impact_factor", report.impact_factor},
                                     {"quasi_impact_factor", report.quasi_impact_factor},
                                     {"numerator", report.numerator},
                                     {"quasi_numerator", report.quasi_numerator},
                                     {"denominator", report.denominator}});
    }
    write_json_output(out, cfg.output);
    return 0;
}

int cmd_env(RunConfig cfg) {
    LocalEnvironment env = load_environment_input(cfg);
    emit_warnings(env.warnings);
    write_json_output(environment_to_json(env, config_hash(cfg)), cfg.output);
    return 0;
}

int cmd_map(RunConfig cfg, const std::string& save_graph) {
    LocalEnvironment env = load_environment_input(cfg);
    const std::string hash = config_hash(cfg);

    ProfileSet profiles = build_profiles(env, cfg.keep_diagonal);
    SimilarityGraph sim = build_graph(profiles, cfg.cosine_threshold, cfg.measure);
    emit_warnings(env.warnings);
    emit_warnings(sim.warnings);
    if (!save_graph.empty())
        write_json(graph_to_json(sim, hash), save_graph);

    LayoutConfig layout_config;
    layout_config.iterations = cfg.layout_iterations;
    Coordinates coords = layout(sim, cfg.layout_seed, layout_config);

    std::optional<Eigen::VectorXd> annotation;
    if (cfg.annotate == "betweenness") {
        Graph g = sim.to_graph();
        annotation = betweenness_centrality(g, cfg.weighted_paths, cfg.threads) * 100.0;
    }
    RenderedMap map = build_map(env, sim, coords, cfg.layout_seed, cfg.layout_iterations, {},
                                annotation ? &*annotation : nullptr);
    map.config_hash = hash;

    const MapFormat format = parse_map_format(cfg.format);
    if (cfg.output.empty() || cfg.output == "-") {
        switch (format) {
            case MapFormat::svg: std::cout << render_svg(map); break;
            case MapFormat::dot: std::cout << render_dot(map); break;
            case MapFormat::pajek: std::cout << render_pajek(map); break;
            case MapFormat::json: std::cout << render_map_json(map); break;
        }
    } else {
        export_map(map, format, cfg.output);
    }
    return 0;
}

int cmd_centrality(RunConfig cfg) {
    SimilarityGraph sim = [&]() {
        if (!cfg.graph_path.empty())
            return graph_from_json(load_json(cfg.graph_path));
        LocalEnvironment env = load_environment_input(cfg);
        emit_warnings(env.warnings);
        ProfileSet profiles = build_profiles(env, cfg.keep_diagonal);
        return build_graph(profiles, cfg.cosine_threshold, cfg.measure);
    }();
    emit_warnings(sim.warnings);
    Graph g = sim.to_graph();
    const int m = sim.member_count();

    auto wanted = [&](std::string_view name) {
        return std::find(cfg.measures.begin(), cfg.measures.end(), name) != cfg.measures.end();
    };
    if (cfg.measures.empty())
        throw UsageError("--measures must name at least one measure");

    std::vector<DegreeCentrality> degrees;
    Eigen::VectorXd closeness, betweenness;
    std::optional<EigenvectorResult> eigen;
    if (wanted("degree")) degrees = degree_centrality(g);
    if (wanted("closeness")) closeness = closeness_centrality(g, cfg.weighted_paths, cfg.threads);
    if (wanted("betweenness"))
        betweenness = betweenness_centrality(g, cfg.weighted_paths, cfg.threads);
    if (wanted("eigenvector")) {
        eigen = eigenvector_centrality(g);
        emit_warnings(eigen->warnings);
    }

    ordered_json out;
    out["meta"] = meta_block(config_hash(cfg));
    out["measure"] = to_string(sim.measure);
    out["threshold"] = sim.threshold;
    out["weighted_paths"] = cfg.weighted_paths;
    out["members"] = ordered_json::array();
    std::vector<TableRow> table;
    for (int k = 0; k < m; ++k) {
        ordered_json mj;
        mj["journal"] = sim.labels[static_cast<size_t>(k)];
        if (wanted("degree")) {
            mj["in_degree"] = degrees[static_cast<size_t>(k)].in;
            mj["out_degree"] = degrees[static_cast<size_t>(k)].out;
            mj["degree_normalized"] = degrees[static_cast<size_t>(k)].normalized;
        }
        if (wanted("closeness")) mj["closeness"] = closeness[k];
        if (wanted("betweenness")) mj["betweenness"] = betweenness[k];
        if (wanted("eigenvector")) mj["eigenvector"] = eigen->loadings[k];
        out["members"].push_back(std::move(mj));

        TableRow row;
        row.journal = sim.labels[static_cast<size_t>(k)];
        if (wanted("betweenness")) row.betweenness = betweenness[k];
        if (wanted("closeness")) row.closeness = closeness[k];
        table.push_back(std::move(row));
    }

    if (cfg.output == "-") {
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << format_table(table, cfg.percent);
    if (!cfg.output.empty()) write_json(out, cfg.output);
    return 0;
}

int cmd_report(RunConfig cfg) {
    if (cfg.seeds.empty())
        throw UsageError("at least one seed journal is required (--seed)");
    ReportResult result = run_report(cfg);
    emit_warnings(result.environment.warnings);
    emit_warnings(result.graph.warnings);

    std::cout << format_table(result.table, cfg.percent);
    if (!cfg.outdir.empty()) {
        const std::filesystem::path dir(cfg.outdir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
        write_json(result.report, dir / "report.json");
        export_map(result.map, MapFormat::svg, dir / "map.svg");
        export_map(result.map, MapFormat::dot, dir / "map.dot");
        export_map(result.map, MapFormat::pajek, dir / "map.net");
    } else if (!cfg.output.empty()) {
        write_json_output(result.report, cfg.output);
    }
    return 0;
}

int run_cli_impl(int argc, const char* const* argv) {
    RunConfig cfg;
    if (auto config_path = find_config_arg(argc, argv))
        apply_config_file(cfg, *config_path);

    CLI::App app{"journal citation network analysis"};
    app.set_version_flag("--version", std::string(kToolName) + " " + std::string(kVersion));
    app.require_subcommand(1);

    std::string config_path_opt;  // consumed by the pre-scan; declared so it parses
    app.add_option("--config", config_path_opt, "JSON config file with defaults");

    std::string mode_str(to_string(cfg.mode));
    std::string measure_str(to_string(cfg.measure));
    const std::vector<std::string> mode_names{"cited", "citing"};
    const std::vector<std::string> measure_names{"cosine", "pearson"};
    const std::vector<std::string> format_names{"svg", "dot", "pajek", "json"};
    const std::vector<std::string> measure_list_names{"degree", "closeness", "betweenness",
                                                      "eigenvector"};

    auto add_matrix_input = [&](CLI::App* sub) {
        sub->add_option("--edges", cfg.edges_path, "citation edge-list CSV");
        sub->add_option("--matrix", cfg.matrix_path, "citation matrix JSON (from ingest)");
        sub->add_option("--year", cfg.year, "data year");
        sub->add_option("--source", cfg.source_tag, "source index tag for --edges journals");
    };
    auto add_env_options = [&](CLI::App* sub) {
        sub->add_option("--seeds,--seed", cfg.seeds, "seed journal abbreviations")
            ->delimiter(',');
        sub->add_option("--mode", mode_str, "citation direction")
            ->check(CLI::IsMember(mode_names));
        sub->add_option("--share", cfg.share_threshold,
                        "environment admission share (strictly-greater rule)");
    };
    auto add_similarity_options = [&](CLI::App* sub) {
        sub->add_option("--measure", measure_str, "similarity measure")
            ->check(CLI::IsMember(measure_names));
        sub->add_option("--threshold-cosine", cfg.cosine_threshold,
                        "minimum similarity for an edge");
        sub->add_flag("--keep-diagonal", cfg.keep_diagonal,
                      "keep self-citations in the profiles");
    };
    auto add_kernel_options = [&](CLI::App* sub) {
        sub->add_flag("--weighted-paths", cfg.weighted_paths,
                      "geodesics on 1/weight distances instead of hop counts");
        sub->add_option("--threads", cfg.threads, "worker thread cap (0 = automatic)");
    };
    auto add_layout_options = [&](CLI::App* sub) {
        sub->add_option("--layout-seed", cfg.layout_seed, "layout random seed");
        sub->add_option("--layout-iterations", cfg.layout_iterations,
                        "force-directed iteration count");
        sub->add_option("--annotate", cfg.annotate, "bracketed node annotation")
            ->check(CLI::IsMember({"betweenness"}));
    };

    CLI::App* ingest = app.add_subcommand("ingest", "load and merge edge-list CSVs");
    std::vector<std::string> ingest_edges;
    std::vector<std::string> ingest_sources;
    ingest->add_option("--edges", ingest_edges, "edge-list CSV (repeat to merge)");
    ingest->add_option("--source", ingest_sources, "source tag, one per --edges");
    ingest->add_option("--year", cfg.year, "data year");
    ingest->add_option("--output,-o", cfg.output, "matrix JSON path (default stdout)");

    CLI::App* indicators = app.add_subcommand("indicators", "impact factors from citable records");
    std::vector<std::string> indicator_journals;
    indicators->add_option("--citable", cfg.citable_path, "citable-record CSV");
    indicators->add_option("--year", cfg.year, "report year");
    indicators->add_option("--window", cfg.if_window, "citation window in years");
    indicators->add_option("--journals,--journal", indicator_journals,
                           "journals to report (default: all)")
        ->delimiter(',');
    indicators->add_option("--output,-o", cfg.output, "JSON path (default stdout)");

    CLI::App* env = app.add_subcommand("env", "extract a citation environment");
    add_matrix_input(env);
    add_env_options(env);
    env->add_option("--output,-o", cfg.output, "environment JSON path (default stdout)");

    CLI::App* map = app.add_subcommand("map", "render a similarity map");
    std::string save_graph;
    add_matrix_input(map);
    add_env_options(map);
    map->add_option("--env", cfg.env_path, "environment JSON (from env)");
    add_similarity_options(map);
    add_kernel_options(map);
    add_layout_options(map);
    map->add_option("--format", cfg.format, "output format")->check(CLI::IsMember(format_names));
    map->add_option("--save-graph", save_graph, "also write the similarity graph JSON");
    map->add_option("--output,-o", cfg.output, "map file path (default stdout)");

    CLI::App* centrality = app.add_subcommand("centrality", "centrality table for a graph");
    add_matrix_input(centrality);
    add_env_options(centrality);
    centrality->add_option("--env", cfg.env_path, "environment JSON (from env)");
    centrality->add_option("--graph", cfg.graph_path, "similarity graph JSON (from map --save-graph)");
    add_similarity_options(centrality);
    add_kernel_options(centrality);
    centrality->add_option("--measures", cfg.measures, "measures to compute")
        ->delimiter(',')
        ->check(CLI::IsMember(measure_list_names));
    centrality->add_flag("--percent", cfg.percent, "scale table fractions to percentages");
    centrality->add_option("--output,-o", cfg.output, "JSON path ('-' for stdout)");

    CLI::App* report = app.add_subcommand("report", "full pipeline: table plus rendered map");
    add_matrix_input(report);
    report->add_option("--citable", cfg.citable_path, "citable-record CSV for impact factors");
    add_env_options(report);
    add_similarity_options(report);
    add_kernel_options(report);
    add_layout_options(report);
    report->add_flag("--percent", cfg.percent, "scale table fractions to percentages");
    report->add_option("--window", cfg.if_window, "citation window in years");
    report->add_option("--outdir", cfg.outdir, "directory for report.json and map files");
    report->add_option("--output,-o", cfg.output, "report JSON path when --outdir is not used");

    // Lets --config appear after the subcommand name; unmatched options climb
    // to the top-level app instead of erroring inside the subcommand.
    for (CLI::App* sub : {ingest, indicators, env, map, centrality, report}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    cfg.mode = parse_mode(mode_str);
    cfg.measure = parse_measure(measure_str);

    if (ingest->parsed()) return cmd_ingest(std::move(cfg), ingest_edges, ingest_sources);
    if (indicators->parsed()) return cmd_indicators(std::move(cfg), indicator_journals);
    if (env->parsed()) return cmd_env(std::move(cfg));
    if (map->parsed()) return cmd_map(std::move(cfg), save_graph);
    if (centrality->parsed()) return cmd_centrality(std::move(cfg));
    if (report->parsed()) return cmd_report(std::move(cfg));
    return 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    try {
        return run_cli_impl(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace citefield

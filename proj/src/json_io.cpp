#include "citefield/json_io.hpp"

#include <fstream>

#include "citefield/errors.hpp"
#include "citefield/version.hpp"

namespace citefield {

ordered_json meta_block(const std::string& config_hash) {
    return ordered_json{{"tool", kToolName},
                        {"version", kVersion},
                        {"config_hash", config_hash.empty() ? "none" : config_hash}};
}

namespace {

ordered_json registry_to_json(const JournalRegistry& registry) {
    ordered_json journals = ordered_json::array();
    for (const JournalRecord& rec : registry.records()) {
        ordered_json j{{"id", rec.id}, {"abbrev", rec.abbrev}, {"title", rec.title}};
        j["sources"] = rec.sources;  // std::set serializes sorted
        journals.push_back(std::move(j));
    }
    return journals;
}

JournalRegistry registry_from_json(const ordered_json& journals) {
    JournalRegistry registry;
    for (const auto& j : journals) {
        std::set<std::string> sources;
        if (j.contains("sources"))
            sources = j.at("sources").get<std::set<std::string>>();
        const int id = registry.add(j.at("abbrev").get<std::string>(),
                                    j.value("title", std::string{}), sources);
        if (id != j.at("id").get<int>())
            throw ParseError("journal ids are not contiguous in declaration order");
    }
    return registry;
}

ordered_json entries_to_json(const CountMatrix& counts) {
    ordered_json entries = ordered_json::array();
    // Column-major storage; emit in (citing, cited) order for stable files.
    std::vector<std::tuple<int, int, Count>> rows;
    for (int k = 0; k < counts.outerSize(); ++k)
        for (CountMatrix::InnerIterator it(counts, k); it; ++it)
            if (it.value() != 0)
                rows.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                                  it.value());
    std::sort(rows.begin(), rows.end());
    for (const auto& [citing, cited, count] : rows)
        entries.push_back({citing, cited, count});
    return entries;
}

std::vector<Eigen::Triplet<Count>> entries_from_json(const ordered_json& entries) {
    std::vector<Eigen::Triplet<Count>> result;
    result.reserve(entries.size());
    for (const auto& e : entries) {
        if (!e.is_array() || e.size() != 3)
            throw ParseError("matrix entry must be a [citing, cited, count] triple");
        result.emplace_back(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<Count>());
    }
    return result;
}

[[noreturn]] void rethrow_as_parse_error(const char* what_kind,
                                         const nlohmann::json::exception& e) {
    throw ParseError(std::string(what_kind) + ": " + e.what());
}

}  // namespace

ordered_json matrix_to_json(const CitationMatrix& matrix, const std::string& config_hash) {
    ordered_json j;
    j["meta"] = meta_block(config_hash);
    j["year"] = matrix.year();
    j["journals"] = registry_to_json(matrix.registry());
    j["entries"] = entries_to_json(matrix.counts());
    return j;
}

CitationMatrix matrix_from_json(const ordered_json& j) {
    try {
        JournalRegistry registry = registry_from_json(j.at("journals"));
        auto entries = entries_from_json(j.at("entries"));
        return CitationMatrix(j.at("year").get<int>(), std::move(registry), entries);
    } catch (const nlohmann::json::exception& e) {
        rethrow_as_parse_error("malformed matrix document", e);
    }
}

ordered_json environment_to_json(const LocalEnvironment& env, const std::string& config_hash) {
    ordered_json j;
    j["meta"] = meta_block(config_hash);
    j["year"] = env.submatrix.year();
    j["mode"] = to_string(env.mode);
    j["share_threshold"] = env.share_threshold;

    j["seeds"] = ordered_json::array();
    for (int seed : env.seeds) {
        // Seed records live in the submatrix registry under their local index.
        j["seeds"].push_back({{"id", seed},
                              {"abbrev", env.submatrix.registry().record(env.local_index(seed)).abbrev}});
    }

    j["members"] = ordered_json::array();
    for (int local = 0; local < env.member_count(); ++local) {
        const int pid = env.parent_id(local);
        const JournalRecord& rec = env.submatrix.registry().record(local);
        ordered_json mj{{"id", pid}, {"local", local}, {"abbrev", rec.abbrev},
                        {"title", rec.title}};
        mj["sources"] = rec.sources;
        ordered_json admitted = ordered_json::array();
        auto it = env.provenance.find(pid);
        if (it != env.provenance.end())
            for (int seed : it->second) admitted.push_back(seed);
        mj["admitted_by"] = std::move(admitted);
        j["members"].push_back(std::move(mj));
    }

    j["entries"] = entries_to_json(env.submatrix.counts());
    j["warnings"] = env.warnings;
    return j;
}

LocalEnvironment environment_from_json(const ordered_json& j) {
    try {
        std::vector<int> members;
        JournalRegistry registry;
        std::map<int, std::set<int>> provenance;
        for (const auto& mj : j.at("members")) {
            const int pid = mj.at("id").get<int>();
            members.push_back(pid);
            std::set<std::string> sources;
            if (mj.contains("sources"))
                sources = mj.at("sources").get<std::set<std::string>>();
            registry.add(mj.at("abbrev").get<std::string>(), mj.value("title", std::string{}),
                         sources);
            for (const auto& seed : mj.at("admitted_by"))
                provenance[pid].insert(seed.get<int>());
        }
        if (!std::is_sorted(members.begin(), members.end()))
            throw ParseError("environment members must be in ascending id order");

        std::vector<int> seeds;
        for (const auto& sj : j.at("seeds")) seeds.push_back(sj.at("id").get<int>());

        auto entries = entries_from_json(j.at("entries"));
        std::vector<std::string> warnings;
        if (j.contains("warnings"))
            warnings = j.at("warnings").get<std::vector<std::string>>();

        return LocalEnvironment{std::move(members),
                                std::move(seeds),
                                parse_mode(j.at("mode").get<std::string>()),
                                j.at("share_threshold").get<double>(),
                                CitationMatrix(j.at("year").get<int>(), std::move(registry),
                                               entries),
                                std::move(provenance),
                                std::move(warnings)};
    } catch (const nlohmann::json::exception& e) {
        rethrow_as_parse_error("malformed environment document", e);
    }
}

ordered_json graph_to_json(const SimilarityGraph& graph, const std::string& config_hash) {
    ordered_json j;
    j["meta"] = meta_block(config_hash);
    j["measure"] = to_string(graph.measure);
    j["threshold"] = graph.threshold;
    j["members"] = ordered_json::array();
    for (size_t k = 0; k < graph.members.size(); ++k)
        j["members"].push_back({{"id", graph.members[k]}, {"abbrev", graph.labels[k]}});
    j["edges"] = ordered_json::array();
    for (const WeightedEdge& e : graph.edges)
        j["edges"].push_back({{"source", e.source}, {"target", e.target}, {"weight", e.weight}});
    j["isolates"] = graph.isolates;
    j["warnings"] = graph.warnings;
    return j;
}

SimilarityGraph graph_from_json(const ordered_json& j) {
    try {
        SimilarityGraph graph;
        graph.measure = parse_measure(j.at("measure").get<std::string>());
        graph.threshold = j.at("threshold").get<double>();
        for (const auto& mj : j.at("members")) {
            graph.members.push_back(mj.at("id").get<int>());
            graph.labels.push_back(mj.at("abbrev").get<std::string>());
        }
        for (const auto& ej : j.at("edges"))
            graph.edges.push_back({ej.at("source").get<int>(), ej.at("target").get<int>(),
                                   ej.at("weight").get<double>()});
        if (j.contains("isolates"))
            graph.isolates = j.at("isolates").get<std::vector<int>>();
        if (j.contains("warnings"))
            graph.warnings = j.at("warnings").get<std::vector<std::string>>();
        return graph;
    } catch (const nlohmann::json::exception& e) {
        rethrow_as_parse_error("malformed graph document", e);
    }
}

ordered_json load_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_json(const ordered_json& j, const std::filesystem::path& path) {
    write_text(j.dump(2) + "\n", path);
}

void write_text(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << text;
    if (!out)
        throw IoError("write failed: " + path.string());
}

}  // namespace citefield

#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "citefield/environment.hpp"
#include "citefield/errors.hpp"
#include "citefield/json_io.hpp"
#include "citefield/similarity.hpp"
#include "support/builders.hpp"

using namespace citefield;

namespace {

CitationMatrix titled_matrix() {
    JournalRegistry registry;
    registry.add("CJE", "Cambridge Journal of Economics", {"fixture"});
    registry.add("AER", "", {"a", "b"});
    std::vector<Eigen::Triplet<Count>> entries{{0, 1, 3}, {1, 0, 2}, {0, 0, 5}};
    return CitationMatrix(2006, std::move(registry), entries);
}

}  // namespace

TEST_CASE("meta block names the tool and folds empty hashes to none") {
    CHECK(meta_block("").dump() ==
          R"({"tool":"citefield","version":"0.1.0","config_hash":"none"})");
    CHECK(meta_block("82f9e856c35b5722")["config_hash"] == "82f9e856c35b5722");
}

TEST_CASE("matrix documents round-trip") {
    const CitationMatrix m = titled_matrix();
    const ordered_json j = matrix_to_json(m, "abc");

    CHECK(j["meta"]["config_hash"] == "abc");
    CHECK(j["year"] == 2006);
    CHECK(j["journals"][0]["id"] == 0);
    CHECK(j["journals"][0]["abbrev"] == "CJE");
    CHECK(j["journals"][0]["title"] == "Cambridge Journal of Economics");
    CHECK(j["journals"][0]["sources"] == ordered_json::array({"fixture"}));
    CHECK(j["journals"][1]["sources"] == ordered_json::array({"a", "b"}));
    // Entries are (citing, cited) sorted regardless of triplet order.
    CHECK(j["entries"] == ordered_json::parse("[[0,0,5],[0,1,3],[1,0,2]]"));

    const CitationMatrix back = matrix_from_json(j);
    CHECK(back.year() == 2006);
    CHECK(back.size() == 2);
    CHECK(back.at(0, 1) == 3);
    CHECK(back.at(1, 0) == 2);
    CHECK(back.at(0, 0) == 5);
    CHECK(back.grand_total() == 10);
    CHECK(back.registry().record(0).title == "Cambridge Journal of Economics");
    CHECK(back.registry().record(0).sources == std::set<std::string>{"fixture"});
    CHECK(back.registry().record(1).abbrev == "AER");

    // Serializing the reload reproduces the document.
    CHECK(matrix_to_json(back, "abc") == j);
}

TEST_CASE("zero-count cells never reach the document") {
    const CitationMatrix m = testing::make_matrix(2001, {{"A", "B", 0}});
    const ordered_json j = matrix_to_json(m, "");
    CHECK(j["entries"].empty());
    CHECK(j["journals"].size() == 2);
}

TEST_CASE("matrix documents reject gaps and malformed entries") {
    ordered_json j = matrix_to_json(titled_matrix(), "");
    j["journals"][1]["id"] = 5;
    CHECK_THROWS_WITH_AS(matrix_from_json(j),
                         "journal ids are not contiguous in declaration order", ParseError);

    ordered_json bad_entry = matrix_to_json(titled_matrix(), "");
    bad_entry["entries"][0] = ordered_json::array({1, 2});
    CHECK_THROWS_WITH_AS(matrix_from_json(bad_entry),
                         "matrix entry must be a [citing, cited, count] triple", ParseError);

    ordered_json missing = matrix_to_json(titled_matrix(), "");
    missing.erase("entries");
    CHECK_THROWS_AS(matrix_from_json(missing), ParseError);

    ordered_json wrong_type = matrix_to_json(titled_matrix(), "");
    wrong_type["year"] = "not a year";
    CHECK_THROWS_AS(matrix_from_json(wrong_type), ParseError);
}

TEST_CASE("environment documents round-trip") {
    const CitationMatrix matrix = testing::make_matrix(
        2006, {{"A", "A", 5}, {"B", "A", 3}, {"B", "C", 7}, {"C", "B", 7}});
    EnvironmentSpec spec;
    spec.seeds = {0, 1};
    spec.share_threshold = 0.0;
    const LocalEnvironment env = extract_union(matrix, spec);
    REQUIRE(env.members == std::vector<int>{0, 1, 2});

    const ordered_json j = environment_to_json(env, "e1");
    CHECK(j["meta"]["config_hash"] == "e1");
    CHECK(j["year"] == 2006);
    CHECK(j["mode"] == "cited");
    CHECK(j["share_threshold"] == 0.0);
    CHECK(j["seeds"] == ordered_json::parse(
                            R"([{"id":0,"abbrev":"A"},{"id":1,"abbrev":"B"}])"));
    CHECK(j["members"][1]["id"] == 1);
    CHECK(j["members"][1]["local"] == 1);
    CHECK(j["members"][1]["abbrev"] == "B");
    // B cites A above the cutoff and seeds itself.
    CHECK(j["members"][1]["admitted_by"] == ordered_json::array({0, 1}));
    CHECK(j["members"][2]["admitted_by"] == ordered_json::array({1}));
    CHECK(j["warnings"].empty());

    const LocalEnvironment back = environment_from_json(j);
    CHECK(back.members == env.members);
    CHECK(back.seeds == env.seeds);
    CHECK(back.mode == env.mode);
    CHECK(back.share_threshold == env.share_threshold);
    CHECK(back.provenance == env.provenance);
    CHECK(back.warnings == env.warnings);
    CHECK(back.submatrix.year() == 2006);
    REQUIRE(back.member_count() == env.member_count());
    for (int i = 0; i < env.member_count(); ++i) {
        CHECK(back.submatrix.registry().record(i).abbrev ==
              env.submatrix.registry().record(i).abbrev);
        for (int k = 0; k < env.member_count(); ++k)
            CHECK(back.submatrix.at(i, k) == env.submatrix.at(i, k));
    }
    CHECK(environment_to_json(back, "e1") == j);
}

TEST_CASE("environment warnings survive the round-trip") {
    const CitationMatrix matrix = testing::make_matrix(2006, {{"A", "B", 4}, {"X", "Y", 1}});
    EnvironmentSpec spec;
    spec.seeds = {0};  // A cites B but receives nothing.
    spec.share_threshold = 0.0;
    const LocalEnvironment env = extract_union(matrix, spec);
    REQUIRE(env.warnings.size() == 1);
    const LocalEnvironment back = environment_from_json(environment_to_json(env, ""));
    CHECK(back.warnings == env.warnings);
}

TEST_CASE("environment documents reject out-of-order members") {
    const CitationMatrix matrix = testing::make_matrix(
        2006, {{"A", "A", 5}, {"B", "A", 3}, {"B", "C", 7}, {"C", "B", 7}});
    EnvironmentSpec spec;
    spec.seeds = {0, 1};
    spec.share_threshold = 0.0;
    ordered_json j = environment_to_json(extract_union(matrix, spec), "");
    std::swap(j["members"][0], j["members"][1]);
    CHECK_THROWS_WITH_AS(environment_from_json(j),
                         "environment members must be in ascending id order", ParseError);

    ordered_json missing = environment_to_json(extract_union(matrix, spec), "");
    missing.erase("mode");
    CHECK_THROWS_AS(environment_from_json(missing), ParseError);
}

TEST_CASE("graph documents round-trip") {
    SimilarityGraph g;
    g.members = {2, 5, 9};
    g.labels = {"CJE", "JEI", "S&S"};
    g.edges = {{0, 1, 0.73}, {0, 2, 0.7071067811865476}};
    g.threshold = 0.2;
    g.measure = Measure::pearson;
    g.isolates = {};
    g.warnings = {"'S&S' has a zero citation profile; kept as an isolate"};

    const ordered_json j = graph_to_json(g, "h");
    CHECK(j["measure"] == "pearson");
    CHECK(j["threshold"] == 0.2);
    CHECK(j["members"][2] == ordered_json::parse(R"({"id":9,"abbrev":"S&S"})"));
    CHECK(j["edges"][0] ==
          ordered_json::parse(R"({"source":0,"target":1,"weight":0.73})"));

    // Reload through text so number formatting is exercised too.
    const SimilarityGraph back = graph_from_json(ordered_json::parse(j.dump()));
    CHECK(back.members == g.members);
    CHECK(back.labels == g.labels);
    CHECK(back.threshold == g.threshold);
    CHECK(back.measure == g.measure);
    CHECK(back.isolates == g.isolates);
    CHECK(back.warnings == g.warnings);
    REQUIRE(back.edges.size() == 2);
    // Weights survive exactly: JSON serialization must be value-preserving.
    CHECK(back.edges[1].weight == g.edges[1].weight);
    CHECK(graph_to_json(back, "h") == j);

    ordered_json missing = graph_to_json(g, "h");
    missing.erase("measure");
    CHECK_THROWS_AS(graph_from_json(missing), ParseError);
}

TEST_CASE("load_json reports unreadable and unparsable files") {
    testing::TempDir dir;
    CHECK_THROWS_AS(load_json(dir.path() / "absent.json"), IoError);

    const auto bad = dir.write("bad.json", "{not json");
    try {
        load_json(bad);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("bad.json") != std::string::npos);
    }
}

TEST_CASE("write_json and load_json round-trip through the filesystem") {
    testing::TempDir dir;
    const ordered_json doc = matrix_to_json(titled_matrix(), "roundtrip");
    const auto path = dir.path() / "matrix.json";
    write_json(doc, path);

    const std::string text = testing::read_file(path);
    CHECK(text.back() == '\n');
    CHECK(text.find("  \"year\": 2006") != std::string::npos);  // two-space indent

    CHECK(load_json(path) == doc);

    CHECK_THROWS_AS(write_json(doc, dir.path() / "no_such_dir" / "x.json"), IoError);
}

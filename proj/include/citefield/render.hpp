#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "citefield/environment.hpp"
#include "citefield/similarity.hpp"

namespace citefield {

using Coordinates = Eigen::Matrix<double, Eigen::Dynamic, 2>;

struct LayoutConfig {
    int iterations = 500;
    double initial_temperature = 0.10;  // displacement cap, unit-canvas fraction
    double margin = 0.08;               // kept clear around the connected layout
    double isolate_band = 0.05;         // y of the margin strip holding isolates
};

// Deterministic spring-embedder placement in the unit square. Identical
// (graph, seed, config) inputs give bit-identical coordinates. Isolates are
// lined up on the bottom margin in id order; a single-member graph sits at
// the canvas center.
Coordinates layout(const SimilarityGraph& g, std::uint64_t seed,
                   const LayoutConfig& config = {});

struct GlyphSpec {
    int member = 0;                     // local index
    std::string label;
    double x = 0.0, y = 0.0;            // unit-canvas coordinates, y up
    double radius_x = 0.0;              // shrinks with self-citations
    double radius_y = 0.0;              // grows with the log of cites received
    std::optional<double> annotation;   // betweenness percentage, if requested
};

struct RenderedMap {
    struct Edge {
        int source = 0, target = 0;
        double weight = 0.0;
        double display_width = 0.0;     // monotone in weight
    };

    std::vector<GlyphSpec> glyphs;      // one per member, isolates included
    std::vector<Edge> edges;
    double canvas_width = 1000.0;
    double canvas_height = 1000.0;
    std::uint64_t layout_seed = 0;
    int layout_iterations = 0;
    double threshold = 0.0;
    std::string measure;
    std::string config_hash;            // stamped into every export
};

struct GlyphConfig {
    double max_radius = 0.06;   // radius_y of the most-cited member
    double min_radius = 0.008;  // floor for either axis; zero-citation members get this
    double min_edge_width = 0.6;
    double max_edge_width = 4.0;
};

// Computes glyph radii from within-environment citation totals:
// radius_y ~ log(1 + cites received), radius_x ~ log(1 + cites minus
// self-citations), linearly scaled so the largest radius_y hits
// config.max_radius. Pass betweenness percentages to annotate labels.
RenderedMap build_map(const LocalEnvironment& env, const SimilarityGraph& g,
                      const Coordinates& coords, std::uint64_t layout_seed,
                      int layout_iterations, const GlyphConfig& config = {},
                      const Eigen::VectorXd* betweenness_percent = nullptr);

enum class MapFormat { svg, dot, pajek, json };

std::string_view to_string(MapFormat format);
MapFormat parse_map_format(std::string_view text);

std::string render_svg(const RenderedMap& map);
std::string render_dot(const RenderedMap& map);
std::string render_pajek(const RenderedMap& map);
std::string render_map_json(const RenderedMap& map);

void export_map(const RenderedMap& map, MapFormat format,
                const std::filesystem::path& path);

}  // namespace citefield

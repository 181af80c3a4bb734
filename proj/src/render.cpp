#include "citefield/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "citefield/errors.hpp"
#include "citefield/json_io.hpp"
#include "citefield/version.hpp"

namespace citefield {

namespace {

// Top 53 bits of the generator word, mapped onto [0, 1). Written out instead
// of uniform_real_distribution, whose output sequence is not pinned by the
// standard; coordinates are part of the reproducibility contract.
double next_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string fmt(const char* spec, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, value);
    return buf;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string dot_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

// Pajek has no escape syntax inside quoted labels; embedded quotes are
// downgraded to apostrophes.
std::string pajek_label(const std::string& text) {
    std::string out = text;
    std::replace(out.begin(), out.end(), '"', '\'');
    return out;
}

std::string annotated_label(const GlyphSpec& glyph) {
    if (!glyph.annotation) return glyph.label;
    return glyph.label + " [" + fmt("%.2f", *glyph.annotation) + "]";
}

}  // namespace

Coordinates layout(const SimilarityGraph& g, std::uint64_t seed, const LayoutConfig& config) {
    const int m = g.member_count();
    Coordinates pos(m, 2);
    if (m == 0) return pos;

    // Initial positions are drawn for every member in id order, so the
    // random sequence consumed does not depend on which members end up
    // isolated.
    std::mt19937_64 rng(seed);
    for (int v = 0; v < m; ++v) {
        pos(v, 0) = next_uniform(rng);
        pos(v, 1) = next_uniform(rng);
    }

    if (m == 1) {
        pos(0, 0) = 0.5;
        pos(0, 1) = 0.5;
        return pos;
    }

    std::vector<char> isolate(static_cast<size_t>(m), 0);
    for (int v : g.isolates) isolate[static_cast<size_t>(v)] = 1;
    std::vector<int> placed;  // spring-embedded nodes, ascending id
    for (int v = 0; v < m; ++v)
        if (!isolate[static_cast<size_t>(v)]) placed.push_back(v);

    if (!placed.empty()) {
        const int nc = static_cast<int>(placed.size());
        const double k = std::sqrt(1.0 / static_cast<double>(nc));
        const double eps = 1e-9;
        Eigen::MatrixXd disp(m, 2);

        for (int iter = 0; iter < config.iterations; ++iter) {
            disp.setZero();

            for (int a : placed) {
                for (int b : placed) {
                    if (a == b) continue;
                    double dx = pos(a, 0) - pos(b, 0);
                    double dy = pos(a, 1) - pos(b, 1);
                    double d = std::sqrt(dx * dx + dy * dy);
                    if (d < eps) {
                        // Coincident nodes repel along a fixed axis.
                        dx = 1.0;
                        dy = 0.0;
                        d = eps;
                    }
                    const double force = k * k / d;
                    disp(a, 0) += dx / d * force;
                    disp(a, 1) += dy / d * force;
                }
            }

            for (const WeightedEdge& e : g.edges) {
                double dx = pos(e.source, 0) - pos(e.target, 0);
                double dy = pos(e.source, 1) - pos(e.target, 1);
                double d = std::sqrt(dx * dx + dy * dy);
                if (d < eps) {
                    dx = 1.0;
                    dy = 0.0;
                    d = eps;
                }
                const double force = d * d / k;
                disp(e.source, 0) -= dx / d * force;
                disp(e.source, 1) -= dy / d * force;
                disp(e.target, 0) += dx / d * force;
                disp(e.target, 1) += dy / d * force;
            }

            const double t = config.initial_temperature *
                             (1.0 - static_cast<double>(iter) / config.iterations);
            for (int v : placed) {
                const double dx = disp(v, 0);
                const double dy = disp(v, 1);
                const double len = std::sqrt(dx * dx + dy * dy);
                if (len > 0.0) {
                    const double step = std::min(len, t);
                    pos(v, 0) += dx / len * step;
                    pos(v, 1) += dy / len * step;
                }
            }
        }

        // Recenter the embedded nodes on the canvas center, then shrink (never
        // stretch) so everything respects the margin.
        double cx = 0.0, cy = 0.0;
        for (int v : placed) {
            cx += pos(v, 0);
            cy += pos(v, 1);
        }
        cx /= static_cast<double>(nc);
        cy /= static_cast<double>(nc);
        for (int v : placed) {
            pos(v, 0) = (pos(v, 0) - cx) + 0.5;
            pos(v, 1) = (pos(v, 1) - cy) + 0.5;
        }

        double maxdev = 0.0;
        for (int v : placed) {
            maxdev = std::max(maxdev, std::abs(pos(v, 0) - 0.5));
            maxdev = std::max(maxdev, std::abs(pos(v, 1) - 0.5));
        }
        const double reach = 0.5 - config.margin;
        if (maxdev > reach) {
            const double s = reach / maxdev;
            for (int v : placed) {
                pos(v, 0) = 0.5 + s * (pos(v, 0) - 0.5);
                pos(v, 1) = 0.5 + s * (pos(v, 1) - 0.5);
            }
        }
    }

    // Isolates sit on an evenly divided strip along the bottom, id order.
    const int iso = static_cast<int>(g.isolates.size());
    for (int i = 0; i < iso; ++i) {
        const int v = g.isolates[static_cast<size_t>(i)];
        pos(v, 0) = static_cast<double>(i + 1) / static_cast<double>(iso + 1);
        pos(v, 1) = config.isolate_band;
    }
    return pos;
}

RenderedMap build_map(const LocalEnvironment& env, const SimilarityGraph& g,
                      const Coordinates& coords, std::uint64_t layout_seed,
                      int layout_iterations, const GlyphConfig& config,
                      const Eigen::VectorXd* betweenness_percent) {
    const int m = g.member_count();
    if (env.member_count() != m)
        throw Error("environment and similarity graph sizes differ");
    if (coords.rows() != m)
        throw Error("coordinate count does not match member count");

    RenderedMap map;
    map.layout_seed = layout_seed;
    map.layout_iterations = layout_iterations;
    map.threshold = g.threshold;
    map.measure = std::string(to_string(g.measure));

    // Raw radii follow log(1 + cites); log(0) never occurs so zero-citation
    // isolates still render (at the minimum size).
    std::vector<double> raw_y(static_cast<size_t>(m), 0.0);
    std::vector<double> raw_x(static_cast<size_t>(m), 0.0);
    double max_raw_y = 0.0;
    for (int v = 0; v < m; ++v) {
        const JournalTotals t = env.submatrix.totals(v);
        raw_y[static_cast<size_t>(v)] = std::log1p(static_cast<double>(t.cited));
        raw_x[static_cast<size_t>(v)] = std::log1p(static_cast<double>(t.cited - t.self));
        max_raw_y = std::max(max_raw_y, raw_y[static_cast<size_t>(v)]);
    }
    const double scale = max_raw_y > 0.0 ? config.max_radius / max_raw_y : 0.0;

    map.glyphs.reserve(static_cast<size_t>(m));
    for (int v = 0; v < m; ++v) {
        GlyphSpec glyph;
        glyph.member = v;
        glyph.label = g.labels[static_cast<size_t>(v)];
        glyph.x = coords(v, 0);
        glyph.y = coords(v, 1);
        glyph.radius_y = std::max(raw_y[static_cast<size_t>(v)] * scale, config.min_radius);
        glyph.radius_x = std::max(raw_x[static_cast<size_t>(v)] * scale, config.min_radius);
        if (betweenness_percent) glyph.annotation = (*betweenness_percent)[v];
        map.glyphs.push_back(std::move(glyph));
    }

    map.edges.reserve(g.edges.size());
    for (const WeightedEdge& e : g.edges) {
        RenderedMap::Edge edge;
        edge.source = e.source;
        edge.target = e.target;
        edge.weight = e.weight;
        if (g.threshold >= 1.0) {
            edge.display_width = config.max_edge_width;
        } else {
            const double span = (e.weight - g.threshold) / (1.0 - g.threshold);
            edge.display_width = config.min_edge_width +
                                 (config.max_edge_width - config.min_edge_width) * span;
        }
        map.edges.push_back(edge);
    }
    return map;
}

std::string_view to_string(MapFormat format) {
    switch (format) {
        case MapFormat::svg: return "svg";
        case MapFormat::dot: return "dot";
        case MapFormat::pajek: return "pajek";
        case MapFormat::json: return "json";
    }
    return "svg";
}

MapFormat parse_map_format(std::string_view text) {
    std::string folded = fold_abbrev(text);
    if (folded == "svg") return MapFormat::svg;
    if (folded == "dot") return MapFormat::dot;
    if (folded == "pajek" || folded == "net") return MapFormat::pajek;
    if (folded == "json") return MapFormat::json;
    throw Error("unknown map format '" + std::string(text) +
                "' (expected svg, dot, pajek, or json)");
}

namespace {

std::string meta_comment(const RenderedMap& map) {
    std::string s(kToolName);
    s += " ";
    s += kVersion;
    s += " layout=";
    s += kLayoutAlgorithm;
    s += " seed=" + std::to_string(map.layout_seed);
    s += " iterations=" + std::to_string(map.layout_iterations);
    s += " measure=" + map.measure;
    s += " threshold=" + fmt("%.4f", map.threshold);
    s += " config=" + (map.config_hash.empty() ? std::string("none") : map.config_hash);
    return s;
}

}  // namespace

std::string render_svg(const RenderedMap& map) {
    const double w = map.canvas_width;
    const double h = map.canvas_height;
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%.0f", w) +
           "\" height=\"" + fmt("%.0f", h) + "\" viewBox=\"0 0 " + fmt("%.0f", w) + " " +
           fmt("%.0f", h) + "\">\n";
    svg += "<!-- " + meta_comment(map) + " -->\n";
    svg += "<rect width=\"" + fmt("%.0f", w) + "\" height=\"" + fmt("%.0f", h) +
           "\" fill=\"#ffffff\"/>\n";

    svg += "<g stroke=\"#7a8ba0\" stroke-linecap=\"round\">\n";
    for (const RenderedMap::Edge& e : map.edges) {
        const GlyphSpec& a = map.glyphs[static_cast<size_t>(e.source)];
        const GlyphSpec& b = map.glyphs[static_cast<size_t>(e.target)];
        svg += "  <line x1=\"" + fmt("%.2f", a.x * w) + "\" y1=\"" + fmt("%.2f", (1.0 - a.y) * h) +
               "\" x2=\"" + fmt("%.2f", b.x * w) + "\" y2=\"" + fmt("%.2f", (1.0 - b.y) * h) +
               "\" stroke-width=\"" + fmt("%.2f", e.display_width) + "\"/>\n";
    }
    svg += "</g>\n";

    svg += "<g fill=\"#cfe0f1\" stroke=\"#2b5e8c\" stroke-width=\"1\">\n";
    for (const GlyphSpec& glyph : map.glyphs) {
        svg += "  <ellipse cx=\"" + fmt("%.2f", glyph.x * w) + "\" cy=\"" +
               fmt("%.2f", (1.0 - glyph.y) * h) + "\" rx=\"" + fmt("%.2f", glyph.radius_x * w) +
               "\" ry=\"" + fmt("%.2f", glyph.radius_y * h) + "\"/>\n";
    }
    svg += "</g>\n";

    svg += "<g font-family=\"Helvetica, Arial, sans-serif\" font-size=\"12\" fill=\"#16212d\""
           " text-anchor=\"middle\">\n";
    for (const GlyphSpec& glyph : map.glyphs) {
        const double ty = (1.0 - glyph.y) * h + glyph.radius_y * h + 14.0;
        svg += "  <text x=\"" + fmt("%.2f", glyph.x * w) + "\" y=\"" + fmt("%.2f", ty) + "\">" +
               xml_escape(annotated_label(glyph)) + "</text>\n";
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

std::string render_dot(const RenderedMap& map) {
    std::string dot = "graph citation_map {\n";
    dot += "  // " + meta_comment(map) + "\n";
    dot += "  node [shape=ellipse, fixedsize=true];\n";
    for (const GlyphSpec& glyph : map.glyphs) {
        // Graphviz sizes are in inches; canvas pixels at the usual 72 dpi.
        dot += "  " + std::to_string(glyph.member) + " [label=\"" +
               dot_escape(annotated_label(glyph)) + "\", pos=\"" +
               fmt("%.2f", glyph.x * map.canvas_width) + "," +
               fmt("%.2f", glyph.y * map.canvas_height) + "!\", width=" +
               fmt("%.3f", 2.0 * glyph.radius_x * map.canvas_width / 72.0) + ", height=" +
               fmt("%.3f", 2.0 * glyph.radius_y * map.canvas_height / 72.0) + "];\n";
    }
    for (const RenderedMap::Edge& e : map.edges) {
        dot += "  " + std::to_string(e.source) + " -- " + std::to_string(e.target) +
               " [weight=" + fmt("%.4f", e.weight) + ", penwidth=" +
               fmt("%.2f", e.display_width) + "];\n";
    }
    dot += "}\n";
    return dot;
}

std::string render_pajek(const RenderedMap& map) {
    std::string net = "*Vertices " + std::to_string(map.glyphs.size()) + "\n";
    for (const GlyphSpec& glyph : map.glyphs) {
        net += std::to_string(glyph.member + 1) + " \"" + pajek_label(glyph.label) + "\" " +
               fmt("%.6f", glyph.x) + " " + fmt("%.6f", glyph.y) + "\n";
    }
    net += "*Edges\n";
    for (const RenderedMap::Edge& e : map.edges) {
        net += std::to_string(e.source + 1) + " " + std::to_string(e.target + 1) + " " +
               fmt("%.6f", e.weight) + "\n";
    }
    return net;
}

std::string render_map_json(const RenderedMap& map) {
    ordered_json j;
    j["meta"] = meta_block(map.config_hash);
    j["meta"]["layout"] = {{"algorithm", kLayoutAlgorithm},
                           {"seed", map.layout_seed},
                           {"iterations", map.layout_iterations}};
    j["canvas"] = {{"width", map.canvas_width}, {"height", map.canvas_height}};
    j["measure"] = map.measure;
    j["threshold"] = map.threshold;
    j["glyphs"] = ordered_json::array();
    for (const GlyphSpec& glyph : map.glyphs) {
        ordered_json gj{{"member", glyph.member}, {"label", glyph.label},
                        {"x", glyph.x},           {"y", glyph.y},
                        {"radius_x", glyph.radius_x}, {"radius_y", glyph.radius_y}};
        gj["annotation"] = glyph.annotation ? ordered_json(*glyph.annotation)
                                            : ordered_json(nullptr);
        j["glyphs"].push_back(std::move(gj));
    }
    j["edges"] = ordered_json::array();
    for (const RenderedMap::Edge& e : map.edges) {
        j["edges"].push_back({{"source", e.source},
                              {"target", e.target},
                              {"weight", e.weight},
                              {"display_width", e.display_width}});
    }
    return j.dump(2) + "\n";
}

void export_map(const RenderedMap& map, MapFormat format, const std::filesystem::path& path) {
    std::string text;
    switch (format) {
        case MapFormat::svg: text = render_svg(map); break;
        case MapFormat::dot: text = render_dot(map); break;
        case MapFormat::pajek: text = render_pajek(map); break;
        case MapFormat::json: text = render_map_json(map); break;
    }
    write_text(text, path);
}

}  // namespace citefield

#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "normpatrol/scenario.hpp"
#include "normpatrol/sim.hpp"

namespace normpatrol {

enum class RenderStyle { ascii, svg };

inline std::optional<RenderStyle> render_style_from_name(std::string_view s) noexcept {
    if (s == "ascii") return RenderStyle::ascii;
    if (s == "svg") return RenderStyle::svg;
    return std::nullopt;
}

inline void check_trace_fits(const GridMap& map, const Trace& trace) {
    for (const auto& s : trace.steps)
        if (!map.in_bounds(s.from) || !map.in_bounds(s.to))
            throw std::invalid_argument("trace/map dimension mismatch: step " + to_string(s.from) + "->" +
                                        to_string(s.to) + " outside " + std::to_string(map.width()) + "x" +
                                        std::to_string(map.height()));
}

inline char arrow(Position from, Position to) noexcept {
    if (to.y < from.y) return '^';
    if (to.y > from.y) return 'v';
    if (to.x < from.x) return '<';
    return '>';
}

/// The scenario glyph grid with the route drawn over open cells: each cell a
/// step leaves shows the step direction, '*' when it is left more than once.
/// Barrel and person cells keep their glyph so crossings stay visible.
inline std::string render_ascii(const GridMap& map, const Trace& trace) {
    check_trace_fits(map, trace);
    auto rows = grid_rows(map);
    std::vector<int> departures(rows.size() * static_cast<std::size_t>(map.width()), 0);
    for (const auto& s : trace.steps) {
        const auto t = map.at(s.from);
        if (t != Terrain::Open) continue;
        auto& count = departures[static_cast<std::size_t>(s.from.y) * static_cast<std::size_t>(map.width()) +
                                 static_cast<std::size_t>(s.from.x)];
        rows[static_cast<std::size_t>(s.from.y)][static_cast<std::size_t>(s.from.x)] =
            ++count == 1 ? arrow(s.from, s.to) : '*';
    }
    std::string out;
    for (const auto& r : rows) out += r + '\n';
    return out;
}

inline std::string render_svg(const GridMap& map, const Trace& trace) {
    check_trace_fits(map, trace);
    constexpr int cell = 32;
    const int w = map.width() * cell;
    const int h = map.height() * cell;
    auto center = [&](Position p) {
        return std::to_string(p.x * cell + cell / 2) + "," + std::to_string(p.y * cell + cell / 2);
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
        << w << ' ' << h << "\">\n"
        << "  <defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" "
           "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#1f5fbf\"/></marker></defs>\n";
    for (std::int32_t y = 0; y < map.height(); ++y) {
        for (std::int32_t x = 0; x < map.width(); ++x) {
            const Position p{x, y};
            const char* fill = "#f4f4f0";
            switch (map.at(p)) {
            case Terrain::Open: break;
            case Terrain::Crate: fill = "#8b5a2b"; break;
            case Terrain::Barrel: fill = "#f0a030"; break;
            case Terrain::Person: fill = "#d94040"; break;
            }
            if (map.on_perimeter(p) && map.at(p) == Terrain::Open) fill = "#e2e8f0";
            out << "  <rect x=\"" << x * cell << "\" y=\"" << y * cell << "\" width=\"" << cell << "\" height=\""
                << cell << "\" fill=\"" << fill << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
        }
    }
    const auto start = map.start();
    out << "  <circle cx=\"" << start.x * cell + cell / 2 << "\" cy=\"" << start.y * cell + cell / 2
        << "\" r=\"" << cell / 4 << "\" fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"2\"/>\n";
    if (!trace.steps.empty()) {
        out << "  <polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"3\" stroke-linejoin=\"round\" "
               "marker-end=\"url(#head)\" points=\"";
        const auto route = trace.route();
        for (std::size_t i = 0; i < route.size(); ++i) out << (i ? " " : "") << center(route[i]);
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

inline std::string render(const GridMap& map, const Trace& trace, RenderStyle style) {
    return style == RenderStyle::ascii ? render_ascii(map, trace) : render_svg(map, trace);
}

}  // namespace normpatrol

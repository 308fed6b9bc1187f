#pragma once

// JSON trace documents. Key names are part of the command-line contract:
//
// {
//   "format": "normpatrol-trace/1",
//   "label": "...",
//   "map": {"width": W, "height": H, "start": [x, y], "rows": ["..C", ...]},
//   "task": {"coverage_target": n, "budget": b},
//   "framing": {"kind": "deont"|"util", "k": 0, "ch": 2},
//   "steps": [{"from": [x, y], "to": [x, y], "terrain": "open", "time_spent": 1}, ...],
//   "totals": {"movements", "violations", "cells_covered", "expansions_total", "replans"},
//   "outcome": {"patrol_success": bool, "people_avoided": bool},
//   "conflict": "none"|"over_budget"|"no_plan"|"cheap_violation"|"replan_cap"
// }

#include <cerrno>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "normpatrol/patrol.hpp"
#include "normpatrol/scenario.hpp"
#include "normpatrol/sim.hpp"

namespace normpatrol {

inline constexpr const char* kTraceFormat = "normpatrol-trace/1";

struct TraceDocument {
    std::string label;
    GridMap map;
    std::size_t coverage_target = 0;
    Time budget = 0;
    Framing framing{};
    Trace trace{};
};

inline TraceDocument make_trace_document(const Scenario& sc, Trace trace, std::string label = {}) {
    return {std::move(label), sc.map, coverage_target(sc), sc.movement_budget, sc.framing, std::move(trace)};
}

namespace detail {

inline nlohmann::json position_json(Position p) { return nlohmann::json::array({p.x, p.y}); }

inline Position position_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("position must be a [x, y] array");
    return {j.at(0).get<std::int32_t>(), j.at(1).get<std::int32_t>()};
}

}  // namespace detail

inline nlohmann::json to_json(const TraceDocument& doc) {
    using nlohmann::json;
    json steps = json::array();
    for (const auto& s : doc.trace.steps)
        steps.push_back({{"from", detail::position_json(s.from)},
                         {"to", detail::position_json(s.to)},
                         {"terrain", std::string(terrain_name(s.terrain))},
                         {"time_spent", s.time_spent}});
    const auto& t = doc.trace.totals;
    return json{
        {"format", kTraceFormat},
        {"label", doc.label},
        {"map",
         {{"width", doc.map.width()},
          {"height", doc.map.height()},
          {"start", detail::position_json(doc.map.start())},
          {"rows", grid_rows(doc.map)}}},
        {"task", {{"coverage_target", doc.coverage_target}, {"budget", doc.budget}}},
        {"framing",
         {{"kind", std::string(framing_name(doc.framing.kind))},
          {"k", doc.framing.violation_budget},
          {"ch", doc.framing.person_cost}}},
        {"steps", std::move(steps)},
        {"totals",
         {{"movements", t.movements},
          {"violations", t.violations},
          {"cells_covered", t.cells_covered},
          {"expansions_total", t.expansions_total},
          {"replans", t.replans}}},
        {"outcome",
         {{"patrol_success", doc.trace.outcome.patrol_success},
          {"people_avoided", doc.trace.outcome.people_avoided}}},
        {"conflict", std::string(conflict_name(doc.trace.conflict))},
    };
}

/// Throws std::invalid_argument (or a nlohmann::json exception) on malformed
/// documents.
inline TraceDocument trace_document_from_json(const nlohmann::json& j) {
    if (j.value("format", std::string{}) != kTraceFormat)
        throw std::invalid_argument(std::string("not a trace document (expected format '") + kTraceFormat + "')");
    const auto& m = j.at("map");
    const auto width = m.at("width").get<std::int32_t>();
    const auto height = m.at("height").get<std::int32_t>();
    const auto rows = m.at("rows").get<std::vector<std::string>>();
    if (rows.size() != static_cast<std::size_t>(height))
        throw std::invalid_argument("map rows do not match map height");
    std::vector<Terrain> cells;
    for (const auto& row : rows) {
        if (row.size() != static_cast<std::size_t>(width))
            throw std::invalid_argument("map row does not match map width");
        for (char c : row) {
            auto t = detail::terrain_from_glyph(c);
            if (!t) throw std::invalid_argument(std::string("unknown grid character '") + c + "'");
            cells.push_back(*t);
        }
    }
    TraceDocument doc{j.value("label", std::string{}),
                      GridMap(width, height, std::move(cells), detail::position_from_json(m.at("start")))};
    doc.coverage_target = j.at("task").at("coverage_target").get<std::size_t>();
    doc.budget = j.at("task").at("budget").get<Time>();

    const auto& f = j.at("framing");
    const auto kind = framing_from_name(f.at("kind").get<std::string>());
    if (!kind) throw std::invalid_argument("unknown framing kind");
    doc.framing.kind = *kind;
    doc.framing.violation_budget = f.at("k").get<std::uint32_t>();
    doc.framing.person_cost = f.at("ch").get<Cost>();

    for (const auto& s : j.at("steps")) {
        auto terrain = terrain_from_name(s.at("terrain").get<std::string>());
        if (!terrain) throw std::invalid_argument("unknown terrain name in step");
        doc.trace.steps.push_back({detail::position_from_json(s.at("from")), detail::position_from_json(s.at("to")),
                                   *terrain, s.at("time_spent").get<Time>()});
    }
    const auto& t = j.at("totals");
    doc.trace.totals.movements = t.at("movements").get<Time>();
    doc.trace.totals.violations = t.at("violations").get<std::uint32_t>();
    doc.trace.totals.cells_covered = t.at("cells_covered").get<std::size_t>();
    doc.trace.totals.expansions_total = t.at("expansions_total").get<std::size_t>();
    doc.trace.totals.replans = t.at("replans").get<std::uint32_t>();
    doc.trace.outcome.patrol_success = j.at("outcome").at("patrol_success").get<bool>();
    doc.trace.outcome.people_avoided = j.at("outcome").at("people_avoided").get<bool>();
    auto conflict = conflict_from_name(j.at("conflict").get<std::string>());
    if (!conflict) throw std::invalid_argument("unknown conflict marker");
    doc.trace.conflict = *conflict;
    return doc;
}

inline TraceDocument load_trace_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::system_error(errno, std::generic_category(), "cannot open trace file '" + path + "'");
    return trace_document_from_json(nlohmann::json::parse(in));
}

}  // namespace normpatrol

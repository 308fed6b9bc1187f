#pragma once

// Scenario files.
//
//   # optional comment lines in the header
//   coverage = 0.95
//   budget = 29
//   framing = deont        (deont | util)
//   ch = 2                 person-space cost c_h
//   k = 0                  deontological violation budget
//   meta = on              (on | off)
//   meta_threshold = 4
//   obs_radius = 2         optional; enables the partially observable loop
//   open_cost = 1          optional physical overrides
//   barrel_cost = 2
//
//   ..C..
//   S.P..
//
// Grid glyphs: '.' open, 'C' crate, 'B' barrel, 'P' person, 'S' start (open).

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <vector>

#include "normpatrol/framing.hpp"
#include "normpatrol/world.hpp"

namespace normpatrol {

struct MetaPolicy {
    bool enabled = false;
    Cost threshold = 4.0;  // utilitarian review fires when c_h <= threshold
};

struct Scenario {
    GridMap map;
    double coverage_fraction = 1.0;
    Time movement_budget = 1;
    Framing framing{};
    bool metacognition_enabled = false;
    Cost meta_threshold = 4.0;
    std::optional<std::int32_t> observation_radius{};

    MetaPolicy meta_policy() const { return {metacognition_enabled, meta_threshold}; }

    void validate() const {
        if (!(coverage_fraction > 0.0 && coverage_fraction <= 1.0))
            throw std::invalid_argument("coverage fraction must be in (0, 1]");
        if (movement_budget < 1) throw std::invalid_argument("movement budget must be >= 1");
        if (!(meta_threshold >= 0.0)) throw std::invalid_argument("meta_threshold must be >= 0");
        if (observation_radius && *observation_radius < 1)
            throw std::invalid_argument("observation radius must be >= 1");
        framing.validate();
    }

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

class ScenarioParseError : public std::runtime_error {
public:
    ScenarioParseError(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value)) return std::nullopt;
    }
    return value;
}

inline std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline std::optional<Terrain> terrain_from_glyph(char c) noexcept {
    switch (c) {
    case '.':
    case 'S': return Terrain::Open;
    case 'C': return Terrain::Crate;
    case 'B': return Terrain::Barrel;
    case 'P': return Terrain::Person;
    default: return std::nullopt;
    }
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        pos = nl + 1;
    }
    // "a\n" splits into {"a", ""}; the trailing empty piece is not a line.
    if (!lines.empty() && lines.back().empty() && !text.empty() && text.back() == '\n') lines.pop_back();
    return lines;
}

}  // namespace detail

inline Scenario parse_scenario(std::string_view text) {
    using detail::trim;
    const auto lines = detail::split_lines(text);

    std::map<std::string, std::pair<std::string, std::size_t>> header;  // key -> (value, line)
    std::size_t i = 0;
    bool saw_blank = false;
    for (; i < lines.size(); ++i) {
        const auto lineno = i + 1;
        const auto line = trim(lines[i]);
        if (line.empty()) {
            saw_blank = true;
            ++i;
            break;
        }
        if (line.front() == '#') continue;
        const auto eq = lines[i].find('=');
        if (eq == std::string_view::npos)
            throw ScenarioParseError(lineno, 1, "expected 'key = value' header line");
        const auto key = std::string(trim(lines[i].substr(0, eq)));
        const auto value = std::string(trim(lines[i].substr(eq + 1)));
        if (key.empty()) throw ScenarioParseError(lineno, 1, "empty header key");
        if (header.count(key)) throw ScenarioParseError(lineno, 1, "duplicate header key '" + key + "'");
        header[key] = {value, lineno};
    }
    if (!saw_blank) throw ScenarioParseError(lines.size() + 1, 1, "missing blank line between header and grid");

    // Grid rows, ignoring trailing blank lines.
    std::size_t end = lines.size();
    while (end > i && trim(lines[end - 1]).empty()) --end;
    if (end == i) throw ScenarioParseError(i + 1, 1, "missing grid");

    const auto width = lines[i].size();
    const auto height = end - i;
    std::vector<Terrain> cells;
    cells.reserve(width * height);
    std::optional<Position> start;
    for (std::size_t r = i; r < end; ++r) {
        const auto row = lines[r];
        if (row.size() != width)
            throw ScenarioParseError(r + 1, std::min(row.size(), width) + 1,
                                     "ragged grid row: expected " + std::to_string(width) + " cells, got " +
                                         std::to_string(row.size()));
        for (std::size_t c = 0; c < row.size(); ++c) {
            const auto t = detail::terrain_from_glyph(row[c]);
            const Position p{static_cast<std::int32_t>(c), static_cast<std::int32_t>(r - i)};
            if (!t)
                throw ScenarioParseError(r + 1, c + 1,
                                         std::string("unknown grid character '") + row[c] + "' at cell " +
                                             to_string(p));
            if (row[c] == 'S') {
                if (start) throw ScenarioParseError(r + 1, c + 1, "multiple start cells 'S'");
                start = p;
            }
            cells.push_back(*t);
        }
    }
    if (width < 3 || height < 3)
        throw ScenarioParseError(i + 1, 1,
                                 "grid must be at least 3x3, got " + std::to_string(width) + "x" +
                                     std::to_string(height));
    if (!start) throw ScenarioParseError(i + 1, 1, "no start cell 'S' in grid");

    auto map = [&] {
        try {
            return GridMap(static_cast<std::int32_t>(width), static_cast<std::int32_t>(height), std::move(cells),
                           *start);
        } catch (const std::invalid_argument& e) {
            throw ScenarioParseError(i + 1, 1, e.what());
        }
    }();

    Scenario sc{std::move(map)};
    bool have_coverage = false;
    bool have_budget = false;
    for (const auto& [key, entry] : header) {
        const auto& [value, lineno] = entry;
        auto bad = [&, lineno = lineno](const std::string& why) {
            return ScenarioParseError(lineno, 1, "invalid value '" + value + "' for '" + key + "': " + why);
        };
        if (key == "coverage") {
            auto v = detail::parse_number<double>(value);
            if (!v || !(*v > 0.0 && *v <= 1.0)) throw bad("expected a ratio in (0, 1]");
            sc.coverage_fraction = *v;
            have_coverage = true;
        } else if (key == "budget") {
            auto v = detail::parse_number<std::int64_t>(value);
            if (!v || *v < 1) throw bad("expected a positive integer");
            sc.movement_budget = *v;
            have_budget = true;
        } else if (key == "framing") {
            auto f = framing_from_name(value);
            if (!f) throw bad("expected 'deont' or 'util'");
            sc.framing.kind = *f;
        } else if (key == "ch") {
            auto v = detail::parse_number<double>(value);
            if (!v || *v < 0.0) throw bad("expected a non-negative number");
            sc.framing.person_cost = *v;
        } else if (key == "k") {
            auto v = detail::parse_number<std::uint32_t>(value);
            if (!v) throw bad("expected a non-negative integer");
            sc.framing.violation_budget = *v;
        } else if (key == "meta") {
            if (value == "on") sc.metacognition_enabled = true;
            else if (value == "off") sc.metacognition_enabled = false;
            else throw bad("expected 'on' or 'off'");
        } else if (key == "meta_threshold") {
            auto v = detail::parse_number<double>(value);
            if (!v || *v < 0.0) throw bad("expected a non-negative number");
            sc.meta_threshold = *v;
        } else if (key == "obs_radius") {
            auto v = detail::parse_number<std::int32_t>(value);
            if (!v || *v < 1) throw bad("expected an integer >= 1");
            sc.observation_radius = *v;
        } else if (key == "open_cost" || key == "barrel_cost") {
            auto v = detail::parse_number<std::int64_t>(value);
            if (!v || *v < 1) throw bad("expected an integer >= 1");
            (key == "open_cost" ? sc.framing.physical.open_cost : sc.framing.physical.barrel_cost) = *v;
        } else {
            throw ScenarioParseError(lineno, 1, "unknown header key '" + key + "'");
        }
    }
    if (!have_coverage) throw ScenarioParseError(1, 1, "missing required header key 'coverage'");
    if (!have_budget) throw ScenarioParseError(1, 1, "missing required header key 'budget'");
    return sc;
}

/// Normalized text: fixed key order, every key spelled out, no comments.
inline std::string serialize_scenario(const Scenario& sc) {
    std::ostringstream out;
    out << "coverage = " << detail::format_number(sc.coverage_fraction) << '\n'
        << "budget = " << sc.movement_budget << '\n'
        << "framing = " << framing_name(sc.framing.kind) << '\n'
        << "ch = " << detail::format_number(sc.framing.person_cost) << '\n'
        << "k = " << sc.framing.violation_budget << '\n'
        << "meta = " << (sc.metacognition_enabled ? "on" : "off") << '\n'
        << "meta_threshold = " << detail::format_number(sc.meta_threshold) << '\n';
    if (sc.observation_radius) out << "obs_radius = " << *sc.observation_radius << '\n';
    const PhysicalCosts defaults{};
    if (sc.framing.physical.open_cost != defaults.open_cost)
        out << "open_cost = " << sc.framing.physical.open_cost << '\n';
    if (sc.framing.physical.barrel_cost != defaults.barrel_cost)
        out << "barrel_cost = " << sc.framing.physical.barrel_cost << '\n';
    out << '\n';
    const auto& map = sc.map;
    for (std::int32_t y = 0; y < map.height(); ++y) {
        for (std::int32_t x = 0; x < map.width(); ++x) {
            const Position p{x, y};
            out << (p == map.start() ? 'S' : glyph(map.at(p)));
        }
        out << '\n';
    }
    return out.str();
}

inline std::vector<std::string> grid_rows(const GridMap& map) {
    std::vector<std::string> rows;
    for (std::int32_t y = 0; y < map.height(); ++y) {
        std::string row;
        for (std::int32_t x = 0; x < map.width(); ++x) {
            const Position p{x, y};
            row += p == map.start() ? 'S' : glyph(map.at(p));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::system_error(errno, std::generic_category(), "cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace normpatrol

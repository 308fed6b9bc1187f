#pragma once

// Configuration overrides and the batch runner behind the comparison tables.
//
// A configuration string is a ':'-separated list of tokens, each either a
// framing name or key=value:  "util:ch=2:meta=on", "deont:budget=29".
// Keys: ch, k, meta, meta_threshold, budget, coverage, obs_radius.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "normpatrol/metacog.hpp"
#include "normpatrol/scenario.hpp"
#include "normpatrol/sim.hpp"

namespace normpatrol {

struct Overrides {
    std::optional<FramingKind> framing;
    std::optional<Cost> ch;
    std::optional<std::uint32_t> k;
    std::optional<bool> meta;
    std::optional<Cost> meta_threshold;
    std::optional<Time> budget;
    std::optional<double> coverage;
    std::optional<std::int32_t> obs_radius;
};

/// Overrides win over the scenario header; the result is validated.
inline Scenario apply_overrides(Scenario sc, const Overrides& o) {
    if (o.framing) sc.framing.kind = *o.framing;
    if (o.ch) sc.framing.person_cost = *o.ch;
    if (o.k) sc.framing.violation_budget = *o.k;
    if (o.meta) sc.metacognition_enabled = *o.meta;
    if (o.meta_threshold) sc.meta_threshold = *o.meta_threshold;
    if (o.budget) sc.movement_budget = *o.budget;
    if (o.coverage) sc.coverage_fraction = *o.coverage;
    if (o.obs_radius) sc.observation_radius = *o.obs_radius;
    sc.validate();
    return sc;
}

inline Overrides parse_config(std::string_view spec) {
    Overrides o;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        auto end = spec.find(':', pos);
        if (end == std::string_view::npos) end = spec.size();
        const auto token = detail::trim(spec.substr(pos, end - pos));
        pos = end + 1;
        if (token.empty()) continue;
        if (auto f = framing_from_name(token)) {
            o.framing = *f;
            continue;
        }
        const auto eq = token.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("bad configuration token '" + std::string(token) + "'");
        const auto key = token.substr(0, eq);
        const auto value = token.substr(eq + 1);
        auto fail = [&] {
            return std::invalid_argument("bad value '" + std::string(value) + "' for configuration key '" +
                                         std::string(key) + "'");
        };
        if (key == "framing") {
            auto f = framing_from_name(value);
            if (!f) throw fail();
            o.framing = *f;
        } else if (key == "ch") {
            auto v = detail::parse_number<double>(value);
            if (!v || *v < 0) throw fail();
            o.ch = *v;
        } else if (key == "k") {
            auto v = detail::parse_number<std::uint32_t>(value);
            if (!v) throw fail();
            o.k = *v;
        } else if (key == "meta") {
            if (value != "on" && value != "off") throw fail();
            o.meta = value == "on";
        } else if (key == "meta_threshold") {
            auto v = detail::parse_number<double>(value);
            if (!v || *v < 0) throw fail();
            o.meta_threshold = *v;
        } else if (key == "budget") {
            auto v = detail::parse_number<std::int64_t>(value);
            if (!v || *v < 1) throw fail();
            o.budget = *v;
        } else if (key == "coverage") {
            auto v = detail::parse_number<double>(value);
            if (!v || !(*v > 0 && *v <= 1)) throw fail();
            o.coverage = *v;
        } else if (key == "obs_radius") {
            auto v = detail::parse_number<std::int32_t>(value);
            if (!v || *v < 1) throw fail();
            o.obs_radius = *v;
        } else {
            throw std::invalid_argument("unknown configuration key '" + std::string(key) + "'");
        }
    }
    return o;
}

/// Full pipeline for one scenario: metacognitive planning then playback, or
/// the replan loop when an observation radius is set.
inline Trace run_scenario(const Scenario& sc, const PlanOptions& options = {}) {
    sc.validate();
    if (sc.observation_radius) return run_partially_observable(sc, kDefaultReplanCap, options);
    return execute(sc, plan_with_metacognition(sc, options));
}

struct BatchEntry {
    std::string scenario_path;
    std::string config;  // configuration string, also the row label
};

struct BatchRow {
    std::string scenario;  // file stem
    SummaryRow summary;
};

namespace detail {

inline BatchRow run_entry(const BatchEntry& entry) {
    BatchRow row;
    row.scenario = std::filesystem::path(entry.scenario_path).stem().string();
    row.summary.label = entry.config.empty() ? "default" : entry.config;
    try {
        const auto sc = apply_overrides(load_scenario(entry.scenario_path), parse_config(entry.config));
        auto summary = summarize({run_scenario(sc)}, {row.summary.label});
        row.summary = std::move(summary.front());
    } catch (const std::exception& e) {
        row.summary.patrol_success = false;
        row.summary.people_avoided = true;
        row.summary.note = std::string("error: ") + e.what();
    }
    return row;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace detail

/// Runs entries on up to `threads` workers; rows come back in entry order.
inline std::vector<BatchRow> run_batch(const std::vector<BatchEntry>& entries, unsigned threads = 0) {
    std::vector<BatchRow> rows(entries.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(entries.size(), 1)));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (auto i = next++; i < entries.size(); i = next++) rows[i] = detail::run_entry(entries[i]);
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    return rows;
}

inline constexpr std::string_view kCsvHeader =
    "scenario,configuration,expansions,people_avoided,patrol_success,movements,violations,replans,note";

inline std::string to_csv(const std::vector<BatchRow>& rows) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        const auto& s = r.summary;
        out << detail::csv_field(r.scenario) << ',' << detail::csv_field(s.label) << ',' << s.expansions_total << ','
            << (s.people_avoided ? "true" : "false") << ',' << (s.patrol_success ? "true" : "false") << ','
            << s.movements << ',' << s.violations << ',' << s.replans << ',' << detail::csv_field(s.note) << '\n';
    }
    return out.str();
}

}  // namespace normpatrol

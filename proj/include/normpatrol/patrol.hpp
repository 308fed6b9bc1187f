#pragma once

// The patrol task as a search problem. A state is (position, covered border
// cells, person-cell entries); the goal is to be back home with at least
// `target` border cells covered.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "normpatrol/framing.hpp"
#include "normpatrol/patrol_state.hpp"
#include "normpatrol/scenario.hpp"
#include "normpatrol/search.hpp"
#include "normpatrol/world.hpp"

namespace normpatrol {

struct PatrolTask {
    std::size_t target = 0;  // n_g
    Time budget = 0;         // time available from the planning origin
    Position home;           // where the patrol must end
};

/// ceil(fraction * |perimeter|). The epsilon keeps 0.95 * 20 at 19.
inline std::size_t coverage_target(double fraction, std::size_t perimeter_size) {
    const auto raw = std::ceil(fraction * static_cast<double>(perimeter_size) - 1e-9);
    return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(raw, 1.0)), 1, perimeter_size);
}

inline std::size_t coverage_target(const Scenario& sc) {
    return coverage_target(sc.coverage_fraction, sc.map.perimeter_size());
}

inline PatrolTask make_task(const Scenario& sc) {
    return {coverage_target(sc), sc.movement_budget, sc.map.start()};
}

inline PatrolState apply_move(const PatrolState& state, Position dest, const GridMap& map) {
    if (!map.in_bounds(dest) || manhattan(state.pos, dest) != 1)
        throw std::invalid_argument("move from " + to_string(state.pos) + " to " + to_string(dest) +
                                    " is not between adjacent cells");
    PatrolState next = state;
    next.pos = dest;
    if (auto i = map.perimeter_index(dest)) next.covered.set(*i);
    if (map.at(dest) == Terrain::Person) ++next.violations;
    return next;
}

inline bool is_goal(const PatrolState& state, const PatrolTask& task) noexcept {
    return state.pos == task.home && state.covered_count() >= task.target;
}

/// max(n_g - n_c, Manhattan distance home). Every move costs at least one
/// unit of utility and of time, covers at most one new border cell and
/// changes the distance home by one, so this never overestimates either
/// metric and is consistent.
inline Cost heuristic(const PatrolState& state, const PatrolTask& task) noexcept {
    const auto covered = state.covered_count();
    const auto remaining = covered >= task.target ? 0 : static_cast<std::int64_t>(task.target - covered);
    return static_cast<Cost>(std::max<std::int64_t>(remaining, manhattan(state.pos, task.home)));
}

struct PlanResult {
    std::vector<PatrolState> path;  // origin .. goal inclusive
    Cost utility_cost = 0.0;
    Time physical_time = 0;
    std::uint32_t violations = 0;  // person-cell entries made by this plan
    std::size_t expansions = 0;
    Framing framing{};

    std::vector<Position> route() const {
        std::vector<Position> r;
        r.reserve(path.size());
        for (const auto& s : path) r.push_back(s.pos);
        return r;
    }
    std::size_t moves() const noexcept { return path.empty() ? 0 : path.size() - 1; }
};

struct PlanFailure {
    search::FailureReason reason = search::FailureReason::exhausted;
    std::size_t expansions = 0;
};

using PlanOutcome = std::variant<PlanResult, PlanFailure>;

inline std::size_t expansions_of(const PlanOutcome& o) noexcept {
    return std::visit([](const auto& v) { return v.expansions; }, o);
}

struct PlanOptions {
    std::size_t node_limit = 20'000'000;
    std::function<void(const PatrolState&, Cost, Time, Cost)> on_expand;
};

/// Plans from an arbitrary origin state (used when replanning mid-patrol).
/// Paths whose time would exceed task.budget are never generated.
inline PlanOutcome plan_patrol(const GridMap& map, const PatrolTask& task, const Framing& framing,
                               const PatrolState& origin, const PlanOptions& options = {}) {
    framing.validate();
    if (task.target < 1 || task.target > map.perimeter_size())
        throw std::invalid_argument("coverage target must be within 1..|perimeter|");

    auto successors = [&](const PatrolState& s) {
        std::vector<search::Successor<PatrolState>> out;
        out.reserve(4);
        for (auto dest : neighbors(map, s.pos)) {
            const auto terrain = map.at(dest);
            if (!is_legal_move(framing, s, terrain)) {
                out.push_back({s, false, 0.0, 0});
                continue;
            }
            const auto cost = move_cost(framing, terrain);
            out.push_back({apply_move(s, dest, map), true, cost.utility, cost.time});
        }
        return out;
    };

    search::Options<PatrolState> opts;
    opts.node_limit = options.node_limit;
    opts.time_limit = task.budget;
    opts.on_expand = options.on_expand;

    auto outcome = search::a_star(
        origin, [&](const PatrolState& s) { return is_goal(s, task); }, successors,
        [&](const PatrolState& s) { return heuristic(s, task); }, opts);

    if (auto* fail = std::get_if<search::Failure>(&outcome)) return PlanFailure{fail->reason, fail->expansions};
    auto& res = std::get<search::Result<PatrolState>>(outcome);
    PlanResult plan;
    plan.violations = res.path.back().violations - origin.violations;
    plan.path = std::move(res.path);
    plan.utility_cost = res.utility_cost;
    plan.physical_time = res.physical_time;
    plan.expansions = res.expansions;
    plan.framing = framing;
    return plan;
}

inline PlanOutcome plan_patrol(const Scenario& sc, const Framing& framing, const PlanOptions& options = {}) {
    return plan_patrol(sc.map, make_task(sc), framing, initial_state(sc.map), options);
}

}  // namespace normpatrol

#pragma once

// Plan playback, the plan-move-replan loop for partially observable rooms,
// and Table-style summaries of executed runs.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "normpatrol/metacog.hpp"
#include "normpatrol/patrol.hpp"
#include "normpatrol/scenario.hpp"

namespace normpatrol {

struct Step {
    Position from;
    Position to;
    Terrain terrain = Terrain::Open;
    Time time_spent = 0;

    friend bool operator==(const Step&, const Step&) = default;
};

struct TraceTotals {
    Time movements = 0;
    std::uint32_t violations = 0;
    std::size_t cells_covered = 0;
    std::size_t expansions_total = 0;
    std::uint32_t replans = 0;  // planning rounds (A* invocations) behind this run

    friend bool operator==(const TraceTotals&, const TraceTotals&) = default;
};

struct TraceOutcome {
    bool patrol_success = false;
    bool people_avoided = true;

    friend bool operator==(const TraceOutcome&, const TraceOutcome&) = default;
};

struct Trace {
    std::vector<Step> steps;
    TraceTotals totals;
    TraceOutcome outcome;
    Conflict conflict = Conflict::none;

    std::vector<Position> route() const {
        std::vector<Position> r;
        if (steps.empty()) return r;
        r.push_back(steps.front().from);
        for (const auto& s : steps) r.push_back(s.to);
        return r;
    }

    friend bool operator==(const Trace&, const Trace&) = default;
};

class ExecutionError : public std::runtime_error {
public:
    ExecutionError(Position where, const std::string& what)
        : std::runtime_error("at " + to_string(where) + ": " + what), where_(where) {}
    Position where() const noexcept { return where_; }

private:
    Position where_;
};

namespace detail {

/// Accumulates steps against the true map and recomputes the outcome from
/// what was actually executed.
class TraceBuilder {
public:
    TraceBuilder(const GridMap& map, const Framing& framing, const PatrolTask& task)
        : map_(map), framing_(framing), task_(task), state_(initial_state(map)) {}

    const PatrolState& state() const noexcept { return state_; }
    Time elapsed() const noexcept { return trace_.totals.movements; }
    Trace& trace() noexcept { return trace_; }

    void move_to(Position dest) {
        if (!map_.in_bounds(dest)) throw ExecutionError(dest, "step leaves the map");
        if (manhattan(state_.pos, dest) != 1)
            throw ExecutionError(dest, "step from " + to_string(state_.pos) + " is not to an adjacent cell");
        const auto terrain = map_.at(dest);
        if (terrain == Terrain::Crate) throw ExecutionError(dest, "plan enters a crate cell");
        const Time dt = move_cost(framing_, terrain).time;
        trace_.steps.push_back({state_.pos, dest, terrain, dt});
        state_ = apply_move(state_, dest, map_);
        trace_.totals.movements += dt;
        if (terrain == Terrain::Person) ++trace_.totals.violations;
    }

    Trace finish() {
        trace_.totals.cells_covered = state_.covered_count();
        trace_.outcome.patrol_success = state_.pos == task_.home && state_.covered_count() >= task_.target &&
                                        trace_.totals.movements <= task_.budget;
        trace_.outcome.people_avoided = trace_.totals.violations == 0;
        return std::move(trace_);
    }

private:
    const GridMap& map_;
    const Framing& framing_;
    PatrolTask task_;
    PatrolState state_;
    Trace trace_;
};

}  // namespace detail

/// Plays a plan back on the scenario map.
inline Trace execute(const Scenario& sc, const PlanResult& plan) {
    const auto task = make_task(sc);
    detail::TraceBuilder builder(sc.map, sc.framing, task);
    if (!plan.path.empty() && plan.path.front().pos != sc.map.start())
        throw ExecutionError(plan.path.front().pos, "plan does not begin at the start cell");
    for (std::size_t i = 1; i < plan.path.size(); ++i) builder.move_to(plan.path[i].pos);
    builder.trace().totals.expansions_total = plan.expansions;
    builder.trace().totals.replans = 1;
    return builder.finish();
}

/// Plays the plan of a report back; a report without a plan yields a
/// zero-step trace.
inline Trace execute(const Scenario& sc, const PlanReport& report) {
    const auto task = make_task(sc);
    Trace trace;
    if (report.plan) {
        trace = execute(sc, *report.plan);
    } else {
        detail::TraceBuilder builder(sc.map, sc.framing, task);
        trace = builder.finish();
    }
    trace.totals.expansions_total = report.expansions_total;
    trace.totals.replans = 1 + report.replans;
    trace.conflict = report.conflict;
    return trace;
}

struct ObservationModel {
    std::optional<std::int32_t> radius;  // Chebyshev; absent = fully observable
};

inline constexpr std::uint32_t kDefaultReplanCap = 100;

/// Plan on what has been seen (unseen cells are assumed open), move, and
/// replan whenever newly revealed terrain contradicts the rest of the plan.
inline Trace run_partially_observable(const Scenario& sc, std::uint32_t replan_cap = kDefaultReplanCap,
                                      const PlanOptions& options = {}) {
    sc.validate();
    if (!sc.observation_radius) throw std::invalid_argument("scenario has no observation radius");
    const auto radius = *sc.observation_radius;
    const auto& truth = sc.map;
    const auto task = make_task(sc);

    std::vector<Terrain> believed(truth.cells().size(), Terrain::Open);
    auto cell_index = [&](Position p) {
        return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(truth.width()) +
               static_cast<std::size_t>(p.x);
    };
    auto reveal = [&](Position at) {
        for (auto y = at.y - radius; y <= at.y + radius; ++y)
            for (auto x = at.x - radius; x <= at.x + radius; ++x)
                if (const Position p{x, y}; truth.in_bounds(p)) believed[cell_index(p)] = truth.at(p);
    };

    detail::TraceBuilder builder(truth, sc.framing, task);
    reveal(truth.start());
    std::uint32_t rounds = 0;
    for (;;) {
        if (rounds == replan_cap) {
            builder.trace().conflict = Conflict::replan_cap;
            break;
        }
        ++rounds;
        const GridMap view(truth.width(), truth.height(), believed, truth.start());
        PatrolTask remaining = task;
        remaining.budget = task.budget - builder.elapsed();
        auto report = plan_with_metacognition(view, remaining, builder.state(), sc.framing, sc.meta_policy(), options);
        auto& totals = builder.trace().totals;
        totals.expansions_total += report.expansions_total;
        totals.replans += 1 + report.replans;
        if (builder.trace().conflict == Conflict::none) builder.trace().conflict = report.conflict;
        if (!report.plan || !plan_completes(*report.plan, remaining)) break;

        const auto route = report.plan->route();
        const auto assumed = believed;
        bool contradicted = false;
        for (std::size_t i = 1; i < route.size() && !contradicted; ++i) {
            builder.move_to(route[i]);
            reveal(route[i]);
            for (std::size_t j = i + 1; j < route.size(); ++j) {
                if (believed[cell_index(route[j])] != assumed[cell_index(route[j])]) {
                    contradicted = true;
                    break;
                }
            }
        }
        if (!contradicted) break;
    }
    return builder.finish();
}

struct SummaryRow {
    std::string label;
    std::size_t expansions_total = 0;
    bool people_avoided = true;
    bool patrol_success = false;
    Time movements = 0;
    std::uint32_t violations = 0;
    std::uint32_t replans = 0;
    std::string note;
};

inline std::vector<SummaryRow> summarize(const std::vector<Trace>& traces, const std::vector<std::string>& labels) {
    if (traces.size() != labels.size()) throw std::invalid_argument("summarize: one label per trace required");
    std::vector<SummaryRow> rows;
    rows.reserve(traces.size());
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const auto& t = traces[i];
        rows.push_back({labels[i], t.totals.expansions_total, t.outcome.people_avoided, t.outcome.patrol_success,
                        t.totals.movements, t.totals.violations, t.totals.replans,
                        std::string(conflict_name(t.conflict))});
    }
    return rows;
}

}  // namespace normpatrol

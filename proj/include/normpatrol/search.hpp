#pragma once

// Generic A* over abstract states. Legality, edge cost, edge time, the goal
// test and the heuristic are all supplied by the caller, so the same loop
// serves every framing: a prohibition marks successors illegal, a price
// changes their cost.
//
// Open-set order: lowest f, then lowest t + h, then highest g, then FIFO.
// Duplicates are handled by lazy deletion: a state is re-pushed whenever a
// strictly better (g, t) pair is found and stale heap entries are skipped on
// pop. Edge costs are compared lexicographically on (utility, time), so among
// equally cheap paths the physically shorter one is kept.

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <ranges>
#include <stdexcept>
#include <unordered_map>
#include <variant>
#include <vector>

#include "normpatrol/world.hpp"

namespace normpatrol::search {

template <class State>
struct Successor {
    State state;
    bool legal = true;
    Cost cost = 1.0;
    Time time = 1;
};

enum class FailureReason : std::uint8_t { exhausted, node_limit };

inline constexpr const char* failure_name(FailureReason r) noexcept {
    return r == FailureReason::exhausted ? "exhausted" : "node_limit";
}

struct Failure {
    FailureReason reason = FailureReason::exhausted;
    std::size_t expansions = 0;
};

template <class State>
struct Result {
    std::vector<State> path;  // start .. goal inclusive
    Cost utility_cost = 0.0;
    Time physical_time = 0;
    std::size_t expansions = 0;
};

template <class State>
using Outcome = std::variant<Result<State>, Failure>;

template <class State>
struct Options {
    std::size_t node_limit = 20'000'000;
    /// Successors whose accumulated time would exceed this are not generated.
    std::optional<Time> time_limit;
    /// Called once per expansion with the popped state, its g, t and h.
    std::function<void(const State&, Cost, Time, Cost)> on_expand;
};

template <class State, class Hash = std::hash<State>>
using CameFrom = std::unordered_map<State, State, Hash>;

/// Walks predecessor links back from `end`. A chain longer than the map can
/// hold means the links form a cycle.
template <class State, class Hash>
std::vector<State> reconstruct_path(const CameFrom<State, Hash>& came_from, const State& end) {
    std::vector<State> path{end};
    auto it = came_from.find(end);
    while (it != came_from.end()) {
        if (path.size() > came_from.size())
            throw std::logic_error("cycle detected in predecessor chain");
        path.push_back(it->second);
        it = came_from.find(it->second);
    }
    return {path.rbegin(), path.rend()};
}

template <class F, class State>
concept SuccessorFunction = std::invocable<F&, const State&> &&
    std::ranges::input_range<std::invoke_result_t<F&, const State&>> &&
    std::convertible_to<std::ranges::range_value_t<std::invoke_result_t<F&, const State&>>, Successor<State>>;

template <class State, class Hash = std::hash<State>, std::predicate<const State&> IsGoal,
          SuccessorFunction<State> Successors, std::invocable<const State&> Heuristic>
Outcome<State> a_star(const State& start, IsGoal&& is_goal, Successors&& successors, Heuristic&& h,
                      const Options<State>& options = {}) {
    struct Best {
        Cost g;
        Time t;
    };
    struct Entry {
        Cost f;
        Cost f_time;
        Cost g;
        Time t;
        Cost h;
        std::uint64_t seq;
        State state;
    };
    // std::priority_queue is a max-heap; "less" means "popped later".
    struct Later {
        bool operator()(const Entry& a, const Entry& b) const noexcept {
            if (a.f != b.f) return a.f > b.f;
            if (a.f_time != b.f_time) return a.f_time > b.f_time;
            if (a.g != b.g) return a.g < b.g;
            return a.seq > b.seq;
        }
    };

    std::unordered_map<State, Best, Hash> best;
    CameFrom<State, Hash> came_from;
    std::priority_queue<Entry, std::vector<Entry>, Later> open;
    std::uint64_t seq = 0;
    std::size_t expansions = 0;

    const Cost h0 = static_cast<Cost>(h(start));
    best.emplace(start, Best{0.0, 0});
    open.push(Entry{h0, h0, 0.0, 0, h0, seq++, start});

    while (!open.empty()) {
        Entry current = open.top();
        open.pop();
        const auto& rec = best.find(current.state)->second;
        if (rec.g != current.g || rec.t != current.t) continue;  // stale

        if (expansions == options.node_limit) return Failure{FailureReason::node_limit, expansions};
        ++expansions;
        if (options.on_expand) options.on_expand(current.state, current.g, current.t, current.h);

        if (is_goal(current.state))
            return Result<State>{reconstruct_path<State, Hash>(came_from, current.state), current.g, current.t,
                                 expansions};

        for (Successor<State> next : successors(current.state)) {
            if (!next.legal) continue;
            const Time t2 = current.t + next.time;
            if (options.time_limit && t2 > *options.time_limit) continue;
            const Cost g2 = current.g + next.cost;

            auto [it, inserted] = best.try_emplace(next.state, Best{g2, t2});
            if (!inserted) {
                const bool better = g2 < it->second.g || (g2 == it->second.g && t2 < it->second.t);
                if (!better) continue;
                it->second = Best{g2, t2};
            }
            came_from.insert_or_assign(next.state, current.state);
            const Cost hn = static_cast<Cost>(h(next.state));
            open.push(Entry{g2 + hn, static_cast<Cost>(t2) + hn, g2, t2, hn, seq++, std::move(next.state)});
        }
    }
    return Failure{FailureReason::exhausted, expansions};
}

}  // namespace normpatrol::search

#pragma once

// Post-planning conflict handling between the patrol task and the
// personal-space norm.
//
// Deontological: when no plan fits the budget, the prohibition is relaxed by
// one person-cell entry at a time and the patrol is replanned, up to the
// number of people on the map.
//
// Utilitarian: when the chosen plan enters person cells although c_h is at or
// below the threshold and there is spare time, the norm is re-costed to
// threshold + 1 and the patrol replanned. The revised plan is adopted only if
// it still completes the patrol.

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include "normpatrol/framing.hpp"
#include "normpatrol/patrol.hpp"
#include "normpatrol/scenario.hpp"

namespace normpatrol {

enum class Conflict : std::uint8_t { none, over_budget, no_plan, cheap_violation, replan_cap };

inline constexpr std::string_view conflict_name(Conflict c) noexcept {
    switch (c) {
    case Conflict::none: return "none";
    case Conflict::over_budget: return "over_budget";
    case Conflict::no_plan: return "no_plan";
    case Conflict::cheap_violation: return "cheap_violation";
    case Conflict::replan_cap: return "replan_cap";
    }
    return "none";
}

inline std::optional<Conflict> conflict_from_name(std::string_view s) noexcept {
    for (auto c : {Conflict::none, Conflict::over_budget, Conflict::no_plan, Conflict::cheap_violation,
                   Conflict::replan_cap})
        if (conflict_name(c) == s) return c;
    return std::nullopt;
}

struct PlanReport {
    std::optional<PlanResult> plan;
    Framing framing_used{};
    std::uint32_t replans = 0;
    bool patrol_success = false;
    bool people_avoided = true;
    Conflict conflict = Conflict::none;  // first conflict detected, even if later resolved
    std::size_t expansions_total = 0;
    std::optional<search::FailureReason> failure;  // set when the final round found no plan
};

inline bool plan_completes(const PlanResult& plan, const PatrolTask& task) noexcept {
    return !plan.path.empty() && plan.physical_time <= task.budget && is_goal(plan.path.back(), task);
}

/// Recomputes the outcome flags. A robot that never moved avoided everyone.
inline void update_flags(PlanReport& report, const PatrolTask& task) noexcept {
    report.patrol_success = report.plan && plan_completes(*report.plan, task);
    report.people_avoided = !report.plan || report.plan->violations == 0 || report.plan->moves() == 0;
}

namespace detail {

inline void absorb(PlanReport& report, PlanOutcome&& outcome) {
    report.expansions_total += expansions_of(outcome);
    if (auto* plan = std::get_if<PlanResult>(&outcome)) {
        report.plan = std::move(*plan);
        report.failure.reset();
    } else {
        report.plan.reset();
        report.failure = std::get<PlanFailure>(outcome).reason;
    }
}

}  // namespace detail

inline PlanReport resolve_deontological_conflict(const GridMap& map, const PatrolTask& task,
                                                 const PatrolState& origin, const Framing& framing,
                                                 const MetaPolicy& policy, const PlanOptions& options = {}) {
    if (!framing.is_deontological()) throw std::invalid_argument("deontological conflict resolution needs a deontological framing");
    const auto k_max = origin.violations + static_cast<std::uint32_t>(map.count(Terrain::Person));

    PlanReport report;
    report.framing_used = framing;
    for (;;) {
        detail::absorb(report, plan_patrol(map, task, report.framing_used, origin, options));
        if (report.plan && plan_completes(*report.plan, task)) break;
        if (report.conflict == Conflict::none) report.conflict = report.plan ? Conflict::over_budget : Conflict::no_plan;
        if (!policy.enabled || report.framing_used.violation_budget >= k_max) break;
        ++report.framing_used.violation_budget;
        ++report.replans;
    }
    update_flags(report, task);
    return report;
}

inline PlanReport resolve_deontological_conflict(const Scenario& sc, const PlanOptions& options = {}) {
    return resolve_deontological_conflict(sc.map, make_task(sc), initial_state(sc.map), sc.framing, sc.meta_policy(),
                                          options);
}

inline PlanReport review_utilitarian_plan(const GridMap& map, const PatrolTask& task, const PatrolState& origin,
                                          const MetaPolicy& policy, PlanReport report,
                                          const PlanOptions& options = {}) {
    if (report.plan) {
        const auto& plan = *report.plan;
        const bool cheap = report.framing_used.person_cost <= policy.threshold;
        const bool slack = plan.physical_time < task.budget;
        if (plan.violations > 0 && cheap && slack) {
            if (report.conflict == Conflict::none) report.conflict = Conflict::cheap_violation;
            Framing revised = report.framing_used;
            revised.person_cost = policy.threshold + 1.0;
            auto outcome = plan_patrol(map, task, revised, origin, options);
            ++report.replans;
            report.expansions_total += expansions_of(outcome);
            if (auto* better = std::get_if<PlanResult>(&outcome); better && plan_completes(*better, task)) {
                report.plan = std::move(*better);
                report.framing_used = revised;
            }
        }
    }
    update_flags(report, task);
    return report;
}

inline PlanReport review_utilitarian_plan(const Scenario& sc, PlanReport report, const PlanOptions& options = {}) {
    return review_utilitarian_plan(sc.map, make_task(sc), initial_state(sc.map), sc.meta_policy(), std::move(report),
                                   options);
}

/// Plans without any metacognitive step; the report just wraps the outcome.
inline PlanReport plan_once(const GridMap& map, const PatrolTask& task, const PatrolState& origin,
                            const Framing& framing, const PlanOptions& options = {}) {
    PlanReport report;
    report.framing_used = framing;
    detail::absorb(report, plan_patrol(map, task, framing, origin, options));
    if (!report.plan) report.conflict = Conflict::no_plan;
    else if (!plan_completes(*report.plan, task)) report.conflict = Conflict::over_budget;
    update_flags(report, task);
    return report;
}

inline PlanReport plan_with_metacognition(const GridMap& map, const PatrolTask& task, const PatrolState& origin,
                                          const Framing& framing, const MetaPolicy& policy,
                                          const PlanOptions& options = {}) {
    if (framing.is_deontological()) return resolve_deontological_conflict(map, task, origin, framing, policy, options);
    auto report = plan_once(map, task, origin, framing, options);
    if (!policy.enabled) return report;
    return review_utilitarian_plan(map, task, origin, policy, std::move(report), options);
}

inline PlanReport plan_with_metacognition(const Scenario& sc, const PlanOptions& options = {}) {
    sc.validate();
    return plan_with_metacognition(sc.map, make_task(sc), initial_state(sc.map), sc.framing, sc.meta_policy(),
                                   options);
}

}  // namespace normpatrol

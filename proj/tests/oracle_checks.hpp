#pragma once

// Planner-versus-oracle sweeps over random rooms.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "normpatrol/normpatrol.hpp"
#include "oracle.hpp"

namespace oracle {

inline normpatrol::Scenario to_scenario(const Problem& pb) {
    using namespace normpatrol;
    std::vector<Terrain> cells;
    for (const auto& row : pb.rows)
        for (char c : row) cells.push_back(*detail::terrain_from_glyph(c));
    Scenario sc{GridMap(pb.width(), pb.height(), std::move(cells), {pb.sx, pb.sy})};
    sc.coverage_fraction = pb.fraction;
    sc.movement_budget = pb.budget;
    sc.framing = pb.deont ? Framing::deontological(pb.k) : Framing::utilitarian(pb.ch);
    return sc;
}

inline std::string describe(const Problem& pb) {
    std::ostringstream s;
    s << pb.width() << 'x' << pb.height() << " start (" << pb.sx << ',' << pb.sy << ") target " << pb.target
      << " budget " << pb.budget << (pb.deont ? " deont k=" : " util ch=") << (pb.deont ? pb.k : pb.ch) << '\n';
    for (const auto& r : pb.rows) s << "  " << r << '\n';
    return s.str();
}

struct OptimalityTally {
    int maps = 0;
    int solved = 0;      // both sides found a patrol
    int infeasible = 0;  // both sides found none
    int mismatches = 0;
    std::string first_mismatch;
};

inline OptimalityTally check_optimality(int maps, unsigned seed) {
    OptimalityTally tally;
    std::mt19937 rng(seed);
    for (int i = 0; i < maps; ++i) {
        const auto pb = random_problem(rng);
        const auto sc = to_scenario(pb);
        const auto expected = optimum(pb);
        const auto got = normpatrol::plan_patrol(sc, sc.framing);
        const auto* plan = std::get_if<normpatrol::PlanResult>(&got);
        ++tally.maps;

        bool ok = static_cast<int>(normpatrol::coverage_target(sc)) == pb.target;
        if (ok && expected && plan) {
            ok = plan->utility_cost == expected->utility && plan->physical_time == expected->time;
            ++tally.solved;
        } else if (ok && !expected && !plan) {
            ok = std::get<normpatrol::PlanFailure>(got).reason == normpatrol::search::FailureReason::exhausted;
            ++tally.infeasible;
        } else {
            ok = false;
        }
        if (!ok && tally.mismatches++ == 0) {
            std::ostringstream s;
            s << describe(pb) << "  oracle: "
              << (expected ? std::to_string(expected->utility) + "/" + std::to_string(expected->time) : "none")
              << "  planner: "
              << (plan ? std::to_string(plan->utility_cost) + "/" + std::to_string(plan->physical_time) : "none");
            tally.first_mismatch = s.str();
        }
    }
    return tally;
}

struct HeuristicTally {
    int maps = 0;
    long expanded_checked = 0;
    long admissibility_violations = 0;
    long edges_checked = 0;
    long consistency_violations = 0;
    std::string first_violation;
};

// Rooms whose ring fits a 16-bit mask so the cost-to-go table stays small.
inline bool fits_cost_table(const Problem& pb) { return pb.ring_size() <= 16; }

inline HeuristicTally check_heuristic(int maps, unsigned seed) {
    using namespace normpatrol;
    HeuristicTally tally;
    std::mt19937 rng(seed);
    while (tally.maps < maps) {
        const auto pb = random_problem(rng);
        if (!fits_cost_table(pb)) continue;
        ++tally.maps;
        const auto sc = to_scenario(pb);
        const auto task = make_task(sc);
        const CostToGo j(pb);

        // Translate between the library's clockwise ring indices and the
        // oracle's row-major bits.
        const auto& ring = sc.map.perimeter();
        std::vector<int> lib_to_bit(ring.size());
        for (std::size_t i = 0; i < ring.size(); ++i) lib_to_bit[i] = pb.ring_bit(ring[i].x, ring[i].y);
        auto mask_of = [&](const PatrolState& s) {
            std::uint32_t m = 0;
            for (std::size_t i = 0; i < ring.size(); ++i)
                if (s.covered.test(i)) m |= 1u << lib_to_bit[i];
            return m;
        };
        auto state_of = [&](Position p, std::uint32_t m, unsigned v) {
            PatrolState s{p, {}, v};
            for (std::size_t i = 0; i < ring.size(); ++i)
                if (m & (1u << lib_to_bit[i])) s.covered.set(i);
            return s;
        };
        auto note = [&](const std::string& what) {
            if (tally.first_violation.empty()) tally.first_violation = describe(pb) + "  " + what;
        };

        PlanOptions opts;
        opts.on_expand = [&](const PatrolState& s, Cost, Time, Cost h) {
            ++tally.expanded_checked;
            const double truth = j(s.pos.x, s.pos.y, mask_of(s), s.violations);
            if (h > truth) {
                ++tally.admissibility_violations;
                note("h=" + std::to_string(h) + " > remaining " + std::to_string(truth) + " at " + to_string(s.pos));
            }
        };
        plan_patrol(sc, sc.framing, opts);

        // Every legal edge of the whole state space.
        for (std::uint32_t m = 0; m < (1u << j.bits()); ++m) {
            auto s = state_of(sc.map.start(), m, 0);
            for (std::int32_t y = 0; y < sc.map.height(); ++y) {
                for (std::int32_t x = 0; x < sc.map.width(); ++x) {
                    s.pos = {x, y};
                    if (sc.map.at(s.pos) == Terrain::Crate) continue;
                    for (unsigned v = 0; v < j.levels(); ++v) {
                        s.violations = v;
                        const auto hs = heuristic(s, task);
                        for (auto dest : neighbors(sc.map, s.pos)) {
                            const auto terrain = sc.map.at(dest);
                            if (!is_legal_move(sc.framing, s, terrain)) continue;
                            const auto c = move_cost(sc.framing, terrain).utility;
                            const auto next = apply_move(s, dest, sc.map);
                            ++tally.edges_checked;
                            if (hs > c + heuristic(next, task)) {
                                ++tally.consistency_violations;
                                note("inconsistent edge " + to_string(s.pos) + "->" + to_string(dest));
                            }
                        }
                    }
                }
            }
        }
    }
    return tally;
}

}  // namespace oracle

#pragma once

#include <bitset>
#include <cstdint>
#include <functional>

#include "normpatrol/world.hpp"

namespace normpatrol {

/// Bit i set = perimeter()[i] has been visited.
using CoverageSet = std::bitset<kMaxPerimeter>;

/// Search state of the patrol task: where the robot is, which border cells it
/// has covered, and how many person-occupied cells it has entered.
struct PatrolState {
    Position pos;
    CoverageSet covered;
    std::uint32_t violations = 0;

    std::size_t covered_count() const noexcept { return covered.count(); }

    friend bool operator==(const PatrolState&, const PatrolState&) = default;
};

/// State at the beginning of a patrol; the start cell counts as covered when
/// it lies on the perimeter.
inline PatrolState initial_state(const GridMap& map) {
    PatrolState s{map.start(), {}, 0};
    if (auto i = map.perimeter_index(map.start())) s.covered.set(*i);
    return s;
}

}  // namespace normpatrol

template <>
struct std::hash<normpatrol::PatrolState> {
    std::size_t operator()(const normpatrol::PatrolState& s) const noexcept {
        std::size_t h = std::hash<normpatrol::CoverageSet>{}(s.covered);
        h ^= std::hash<normpatrol::Position>{}(s.pos) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::hash<std::uint32_t>{}(s.violations) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

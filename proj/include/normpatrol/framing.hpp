#pragma once

// How constraints enter the search. Physical constraints apply under every
// framing: crates are impassable and barrels are slow. The personal-space
// norm is read either as a prohibition (deontological: moves into person
// cells are illegal once the violation budget k is spent) or as a price
// (utilitarian: entering a person cell adds c_h to its utility cost).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "normpatrol/patrol_state.hpp"
#include "normpatrol/world.hpp"

namespace normpatrol {

enum class FramingKind : std::uint8_t { Deontological, Utilitarian };

inline constexpr std::string_view framing_name(FramingKind k) noexcept {
    return k == FramingKind::Deontological ? "deont" : "util";
}

inline std::optional<FramingKind> framing_from_name(std::string_view s) noexcept {
    if (s == "deont") return FramingKind::Deontological;
    if (s == "util") return FramingKind::Utilitarian;
    return std::nullopt;
}

/// Cost of traversing Open and Barrel cells. The same value is charged as
/// utility and as time.
struct PhysicalCosts {
    Time open_cost = 1;
    Time barrel_cost = 2;

    friend bool operator==(const PhysicalCosts&, const PhysicalCosts&) = default;
};

/// Both norm parameters are kept regardless of kind so that switching kind
/// from the command line does not lose the other setting.
struct Framing {
    FramingKind kind = FramingKind::Deontological;
    std::uint32_t violation_budget = 0;  // k: person-cell entries that are still legal
    Cost person_cost = 0.0;              // c_h
    PhysicalCosts physical{};

    static Framing deontological(std::uint32_t k = 0) {
        Framing f;
        f.kind = FramingKind::Deontological;
        f.violation_budget = k;
        return f;
    }

    static Framing utilitarian(Cost c_h) {
        Framing f;
        f.kind = FramingKind::Utilitarian;
        f.person_cost = c_h;
        return f;
    }

    bool is_deontological() const noexcept { return kind == FramingKind::Deontological; }

    void validate() const {
        if (!(person_cost >= 0.0)) throw std::invalid_argument("person cost c_h must be >= 0");
        if (physical.open_cost < 1 || physical.barrel_cost < 1)
            throw std::invalid_argument("physical move costs must be >= 1");
    }

    friend bool operator==(const Framing&, const Framing&) = default;
};

struct MoveCost {
    Cost utility;
    Time time;
};

inline bool is_legal_move(const Framing& framing, std::uint32_t violations_so_far, Terrain dest) noexcept {
    switch (dest) {
    case Terrain::Crate: return false;
    case Terrain::Person:
        return framing.kind == FramingKind::Utilitarian || violations_so_far < framing.violation_budget;
    case Terrain::Open:
    case Terrain::Barrel: return true;
    }
    return false;
}

inline bool is_legal_move(const Framing& framing, const PatrolState& state, Terrain dest) noexcept {
    return is_legal_move(framing, state.violations, dest);
}

/// Cost of entering a cell. A person occupies an otherwise open cell, so the
/// utilitarian surcharge is added to the open cost; time is never affected by
/// the norm.
inline MoveCost move_cost(const Framing& framing, Terrain dest) {
    const auto& phys = framing.physical;
    switch (dest) {
    case Terrain::Open: return {static_cast<Cost>(phys.open_cost), phys.open_cost};
    case Terrain::Barrel: return {static_cast<Cost>(phys.barrel_cost), phys.barrel_cost};
    case Terrain::Person: {
        const Cost surcharge = framing.kind == FramingKind::Utilitarian ? framing.person_cost : 0.0;
        return {static_cast<Cost>(phys.open_cost) + surcharge, phys.open_cost};
    }
    case Terrain::Crate: break;
    }
    throw std::logic_error("move_cost queried for a crate cell");
}

inline std::string describe(const Framing& f) {
    if (f.is_deontological()) return "deont(k=" + std::to_string(f.violation_budget) + ")";
    std::string ch = std::to_string(f.person_cost);
    ch.erase(ch.find_last_not_of('0') + 1);
    if (!ch.empty() && ch.back() == '.') ch.pop_back();
    return "util(c_h=" + ch + ")";
}

}  // namespace normpatrol

#pragma once

// Grid warehouse model: terrain, positions, the map itself and its
// perimeter ring.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace normpatrol {

/// Utility cost (what A* minimizes) and physical time (what the budget limits).
using Cost = double;
using Time = std::int64_t;

enum class Terrain : std::uint8_t { Open, Crate, Barrel, Person };

inline constexpr char glyph(Terrain t) noexcept {
    switch (t) {
    case Terrain::Open: return '.';
    case Terrain::Crate: return 'C';
    case Terrain::Barrel: return 'B';
    case Terrain::Person: return 'P';
    }
    return '?';
}

inline constexpr std::string_view terrain_name(Terrain t) noexcept {
    switch (t) {
    case Terrain::Open: return "open";
    case Terrain::Crate: return "crate";
    case Terrain::Barrel: return "barrel";
    case Terrain::Person: return "person";
    }
    return "unknown";
}

inline std::optional<Terrain> terrain_from_name(std::string_view s) noexcept {
    for (auto t : {Terrain::Open, Terrain::Crate, Terrain::Barrel, Terrain::Person})
        if (terrain_name(t) == s) return t;
    return std::nullopt;
}

struct Position {
    std::int32_t x = 0;  // column
    std::int32_t y = 0;  // row, grows downward

    friend constexpr auto operator<=>(const Position&, const Position&) = default;
};

inline constexpr std::int32_t manhattan(Position a, Position b) noexcept {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

inline constexpr std::int32_t chebyshev(Position a, Position b) noexcept {
    const auto dx = std::abs(a.x - b.x);
    const auto dy = std::abs(a.y - b.y);
    return dx > dy ? dx : dy;
}

inline std::string to_string(Position p) {
    return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

/// Upper bound on the perimeter length; coverage sets are fixed-size bitsets.
inline constexpr std::size_t kMaxPerimeter = 256;

/// Rectangular room. Immutable once built; every constructor path validates
/// the invariants (dimensions >= 3, start in bounds and Open).
class GridMap {
public:
    GridMap(std::int32_t width, std::int32_t height, std::vector<Terrain> cells, Position start)
        : width_(width), height_(height), cells_(std::move(cells)), start_(start) {
        if (width_ < 3 || height_ < 3)
            throw std::invalid_argument("map must be at least 3x3, got " + std::to_string(width_) +
                                        "x" + std::to_string(height_));
        if (cells_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_))
            throw std::invalid_argument("cell count does not match map dimensions");
        if (perimeter_size() > kMaxPerimeter)
            throw std::invalid_argument("perimeter of " + std::to_string(perimeter_size()) +
                                        " cells exceeds the supported maximum of " +
                                        std::to_string(kMaxPerimeter));
        if (!in_bounds(start_)) throw std::invalid_argument("start " + to_string(start_) + " out of bounds");
        if (at(start_) != Terrain::Open)
            throw std::invalid_argument("start " + to_string(start_) + " must be an open cell");
        build_perimeter();
    }

    /// All-open room.
    static GridMap open(std::int32_t width, std::int32_t height, Position start) {
        return GridMap(width, height,
                       std::vector<Terrain>(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                                            Terrain::Open),
                       start);
    }

    std::int32_t width() const noexcept { return width_; }
    std::int32_t height() const noexcept { return height_; }
    Position start() const noexcept { return start_; }

    bool in_bounds(Position p) const noexcept {
        return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_;
    }

    Terrain at(Position p) const {
        if (!in_bounds(p)) throw std::out_of_range("position " + to_string(p) + " out of bounds");
        return cells_[index(p)];
    }

    /// Copy with one cell replaced. The start cell must stay Open.
    GridMap with_cell(Position p, Terrain t) const {
        auto cells = cells_;
        if (!in_bounds(p)) throw std::out_of_range("position " + to_string(p) + " out of bounds");
        cells[index(p)] = t;
        return GridMap(width_, height_, std::move(cells), start_);
    }

    bool on_perimeter(Position p) const noexcept {
        return in_bounds(p) && (p.x == 0 || p.y == 0 || p.x == width_ - 1 || p.y == height_ - 1);
    }

    std::size_t perimeter_size() const noexcept {
        return 2 * (static_cast<std::size_t>(width_) + static_cast<std::size_t>(height_)) - 4;
    }

    /// Clockwise ring starting at (0,0).
    const std::vector<Position>& perimeter() const noexcept { return perimeter_; }

    /// Index of p in perimeter(), or nullopt for interior cells.
    std::optional<std::size_t> perimeter_index(Position p) const {
        if (!in_bounds(p)) return std::nullopt;
        const auto i = ring_index_[index(p)];
        if (i < 0) return std::nullopt;
        return static_cast<std::size_t>(i);
    }

    std::size_t count(Terrain t) const noexcept {
        std::size_t n = 0;
        for (auto c : cells_) n += (c == t);
        return n;
    }

    const std::vector<Terrain>& cells() const noexcept { return cells_; }

    friend bool operator==(const GridMap& a, const GridMap& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.start_ == b.start_ && a.cells_ == b.cells_;
    }

private:
    std::size_t index(Position p) const noexcept {
        return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(p.x);
    }

    void build_perimeter() {
        perimeter_.reserve(perimeter_size());
        for (std::int32_t x = 0; x < width_; ++x) perimeter_.push_back({x, 0});
        for (std::int32_t y = 1; y < height_; ++y) perimeter_.push_back({width_ - 1, y});
        for (std::int32_t x = width_ - 2; x >= 0; --x) perimeter_.push_back({x, height_ - 1});
        for (std::int32_t y = height_ - 2; y >= 1; --y) perimeter_.push_back({0, y});
        ring_index_.assign(cells_.size(), -1);
        for (std::size_t i = 0; i < perimeter_.size(); ++i)
            ring_index_[index(perimeter_[i])] = static_cast<std::int32_t>(i);
    }

    std::int32_t width_;
    std::int32_t height_;
    std::vector<Terrain> cells_;
    Position start_;
    std::vector<Position> perimeter_;
    std::vector<std::int32_t> ring_index_;
};

inline const std::vector<Position>& perimeter_cells(const GridMap& map) noexcept { return map.perimeter(); }

/// In-bounds 4-connected neighbours in N, E, S, W order. No legality filtering.
inline std::vector<Position> neighbors(const GridMap& map, Position pos) {
    static constexpr std::array<Position, 4> kSteps{{{0, -1}, {1, 0}, {0, 1}, {-1, 0}}};
    std::vector<Position> out;
    out.reserve(4);
    for (auto d : kSteps) {
        const Position n{pos.x + d.x, pos.y + d.y};
        if (map.in_bounds(n)) out.push_back(n);
    }
    return out;
}

}  // namespace normpatrol

template <>
struct std::hash<normpatrol::Position> {
    std::size_t operator()(const normpatrol::Position& p) const noexcept {
        return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.x)) << 32) |
                                          static_cast<std::uint32_t>(p.y));
    }
};

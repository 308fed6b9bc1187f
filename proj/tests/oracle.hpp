#pragma once

// Reference solvers used only by the tests. Nothing here calls the planner:
// perimeter bits, move costs and the goal test are re-derived from the
// glyph grid so a shared bug cannot hide on both sides.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

namespace oracle {

struct Problem {
    std::vector<std::string> rows;  // '.', 'C', 'B', 'P'; start is given separately
    int sx = 0, sy = 0;
    double fraction = 1.0;
    int target = 1;       // cells of the outer ring that must be visited
    long budget = 0;      // time units
    bool deont = true;
    unsigned k = 0;       // person entries allowed (deont)
    double ch = 0.0;      // person surcharge (util)

    int width() const { return static_cast<int>(rows.front().size()); }
    int height() const { return static_cast<int>(rows.size()); }
    char at(int x, int y) const { return rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)]; }
    bool ring(int x, int y) const { return x == 0 || y == 0 || x == width() - 1 || y == height() - 1; }
    int ring_size() const { return 2 * (width() + height()) - 4; }

    // Row-major numbering of ring cells; -1 for interior cells.
    int ring_bit(int x, int y) const {
        int bit = 0;
        for (int yy = 0; yy < height(); ++yy)
            for (int xx = 0; xx < width(); ++xx) {
                if (!ring(xx, yy)) continue;
                if (xx == x && yy == y) return bit;
                ++bit;
            }
        return -1;
    }

    std::vector<int> ring_bits() const {
        std::vector<int> out;
        for (int y = 0; y < height(); ++y)
            for (int x = 0; x < width(); ++x) out.push_back(ring_bit(x, y));
        return out;
    }
};

struct Edge {
    double utility;
    long time;
    bool person;
};

// Cost of stepping onto a glyph; nullopt when the step is forbidden.
inline std::optional<Edge> step_cost(const Problem& pb, char cell, unsigned v) {
    switch (cell) {
    case 'C': return std::nullopt;
    case 'B': return Edge{2.0, 2, false};
    case 'P':
        if (pb.deont) {
            if (v >= pb.k) return std::nullopt;
            return Edge{1.0, 1, true};
        }
        return Edge{1.0 + pb.ch, 1, true};
    default: return Edge{1.0, 1, false};
    }
}

inline constexpr int kDx[4] = {0, 1, 0, -1};
inline constexpr int kDy[4] = {-1, 0, 1, 0};

struct Best {
    double utility;
    long time;
};

// Exhaustive forward sweep over (cell, visited ring cells, person entries),
// layered by elapsed time, keeping the earliest arrival of each. Utility is
// time plus c_h per person entry, so the earliest arrival per key dominates.
inline std::optional<Best> optimum(const Problem& pb) {
    const int w = pb.width();
    const auto bit_of = pb.ring_bits();
    struct Key {
        int cell;
        std::uint32_t mask;
        unsigned v;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            return (static_cast<std::size_t>(k.mask) * 1'000'003u) ^ (static_cast<std::size_t>(k.cell) << 8) ^ k.v;
        }
    };
    std::unordered_map<Key, long, KeyHash> seen;
    std::vector<std::vector<Key>> layer(static_cast<std::size_t>(pb.budget) + 3);

    const int sb = pb.ring_bit(pb.sx, pb.sy);
    const Key k0{pb.sy * w + pb.sx, sb >= 0 ? (1u << sb) : 0u, 0};
    seen[k0] = 0;
    layer[0].push_back(k0);

    std::optional<Best> best;
    auto consider = [&](const Key& k, long t) {
        const int x = k.cell % w, y = k.cell / w;
        if (x != pb.sx || y != pb.sy || std::popcount(k.mask) < pb.target) return;
        const double u = pb.deont ? static_cast<double>(t) : static_cast<double>(t) + pb.ch * k.v;
        if (!best || u < best->utility || (u == best->utility && t < best->time)) best = Best{u, t};
    };

    for (long t = 0; t <= pb.budget; ++t) {
        for (const Key& k : layer[static_cast<std::size_t>(t)]) {
            if (seen.at(k) != t) continue;
            consider(k, t);
            const int x = k.cell % w, y = k.cell / w;
            for (int d = 0; d < 4; ++d) {
                const int nx = x + kDx[d], ny = y + kDy[d];
                if (nx < 0 || ny < 0 || nx >= w || ny >= pb.height()) continue;
                const auto e = step_cost(pb, pb.at(nx, ny), k.v);
                if (!e || t + e->time > pb.budget) continue;
                const int bit = bit_of[static_cast<std::size_t>(ny * w + nx)];
                const Key n{ny * w + nx, bit >= 0 ? (k.mask | (1u << bit)) : k.mask, k.v + (e->person ? 1u : 0u)};
                const long nt = t + e->time;
                auto [it, fresh] = seen.try_emplace(n, nt);
                if (!fresh) {
                    if (it->second <= nt) continue;
                    it->second = nt;
                }
                layer[static_cast<std::size_t>(nt)].push_back(n);
            }
        }
    }
    return best;
}

// Exact minimal remaining utility to any goal, ignoring the time budget, for
// every (cell, ring mask, person entries) triple. Person entries only matter
// for legality under deont; under util they are collapsed to zero.
class CostToGo {
public:
    explicit CostToGo(const Problem& pb) : pb_(pb) {
        const int w = pb.width(), h = pb.height();
        const auto bit_of = pb.ring_bits();
        cells_ = w * h;
        bits_ = pb.ring_size();
        levels_ = pb.deont ? pb.k + 1 : 1;
        j_.assign(static_cast<std::size_t>(cells_) * (std::size_t{1} << bits_) * levels_,
                  std::numeric_limits<double>::infinity());

        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
        const int home = pb.sy * w + pb.sx;
        for (std::uint32_t m = 0; m < (1u << bits_); ++m) {
            if (std::popcount(m) < pb.target) continue;
            for (unsigned v = 0; v < levels_; ++v) {
                j_[index(home, m, v)] = 0.0;
                open.push({0.0, index(home, m, v)});
            }
        }
        // Backward Dijkstra: for a state s' = (p', m', v') enumerate every s
        // with a legal move s -> s'.
        while (!open.empty()) {
            auto [d, i] = open.top();
            open.pop();
            if (d > j_[i]) continue;
            const auto [cell, mask, v] = decode(i);
            const int px = cell % w, py = cell / w;
            const char c = pb.at(px, py);
            if (c == 'C') continue;
            const bool person = c == 'P';
            unsigned vfrom = v;
            if (pb.deont && person) {
                if (v == 0) continue;
                vfrom = v - 1;
            }
            const auto e = step_cost(pb, c, vfrom);
            if (!e) continue;
            const int bit = bit_of[static_cast<std::size_t>(cell)];
            std::uint32_t masks[2] = {mask, mask};
            int nmask = 1;
            if (bit >= 0) {
                if (!(mask & (1u << bit))) continue;
                masks[1] = mask & ~(1u << bit);
                nmask = 2;
            }
            for (int dd = 0; dd < 4; ++dd) {
                const int qx = px + kDx[dd], qy = py + kDy[dd];
                if (qx < 0 || qy < 0 || qx >= w || qy >= h || pb.at(qx, qy) == 'C') continue;
                for (int mi = 0; mi < nmask; ++mi) {
                    const auto pi = index(qy * w + qx, masks[mi], vfrom);
                    if (d + e->utility < j_[pi]) {
                        j_[pi] = d + e->utility;
                        open.push({j_[pi], pi});
                    }
                }
            }
        }
    }

    double operator()(int x, int y, std::uint32_t mask, unsigned v) const {
        return j_[index(y * pb_.width() + x, mask, pb_.deont ? v : 0)];
    }

    int bits() const { return bits_; }
    unsigned levels() const { return levels_; }

private:
    std::size_t index(int cell, std::uint32_t mask, unsigned v) const {
        return (static_cast<std::size_t>(cell) * (std::size_t{1} << bits_) + mask) * levels_ + v;
    }
    struct Decoded {
        int cell;
        std::uint32_t mask;
        unsigned v;
    };
    Decoded decode(std::size_t i) const {
        const unsigned v = static_cast<unsigned>(i % levels_);
        i /= levels_;
        return {static_cast<int>(i >> bits_), static_cast<std::uint32_t>(i & ((std::size_t{1} << bits_) - 1)), v};
    }

    const Problem& pb_;
    int cells_ = 0;
    int bits_ = 0;
    unsigned levels_ = 1;
    std::vector<double> j_;
};

// Random rooms up to 6x6 with at most three objects.
inline Problem random_problem(std::mt19937& rng) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    Problem pb;
    const int w = pick(3, 6), h = pick(3, 6);
    pb.rows.assign(static_cast<std::size_t>(h), std::string(static_cast<std::size_t>(w), '.'));
    pb.sx = pick(0, w - 1);
    pb.sy = pick(0, h - 1);
    const int objects = pick(0, 3);
    for (int placed = 0; placed < objects;) {
        const int x = pick(0, w - 1), y = pick(0, h - 1);
        if ((x == pb.sx && y == pb.sy) || pb.at(x, y) != '.') continue;
        pb.rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = "CBP"[pick(0, 2)];
        ++placed;
    }
    static constexpr int kNum[] = {1, 1, 2, 3, 1};
    static constexpr int kDen[] = {4, 2, 3, 4, 1};
    const int f = pick(0, 4);
    const int ring = pb.ring_size();
    pb.fraction = static_cast<double>(kNum[f]) / kDen[f];
    pb.target = std::max(1, (kNum[f] * ring + kDen[f] - 1) / kDen[f]);
    pb.budget = pick(ring / 2, ring + 6);
    pb.deont = pick(0, 1) == 0;
    pb.k = static_cast<unsigned>(pick(0, 1));
    static constexpr double kCh[] = {0.0, 1.0, 2.0, 5.0, 9.0};
    pb.ch = kCh[pick(0, 4)];
    return pb;
}

}  // namespace oracle

#pragma once

// Brute-force references for gamma.
//
// These only ever ask `member(spec, depth, x)` about lattice points; they do
// not look at gap lists or window components, so they share no code path with
// the exact engine in porosity.hpp. Centres sit on the lattice step*Z,
// membership is sampled on (step/3)*Z. With lattice-aligned inputs every
// component endpoint is sampled and the oracles underestimate gamma by less
// than the step.

#include "porosity/rational.hpp"
#include "porosity/ternary_sets.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace porosity {

struct OracleConfig {
    Rat grid_step = inv_pow3(9);
    int depth = 6;
};

namespace oracle_detail {

// Sampled member indices j (point j*u) of the set near [lo, hi].
inline std::vector<Int> sampled_members(const LevelIndexSpec& spec, int depth, const Rat& lo, const Rat& hi,
                                        const Rat& u) {
    Int j = std::max(Int((lo / u).floor()), Int(0));
    Int j_end = std::min(Int((hi / u).ceil()), Int((Rat(1) / u).floor()));
    std::vector<Int> out;
    for (; j <= j_end; ++j)
        if (member(spec, depth, Rat(j) * u)) out.push_back(j);
    return out;
}

// Per-axis data for centres strictly inside (x-h, x+h): offset |z-x| and the
// sampled distance to the set, capped at h.
struct Axis {
    std::vector<Rat> offset;
    std::vector<Rat> dist;
};

inline Axis build_axis(const LevelIndexSpec& spec, int depth, const Rat& x, const Rat& h, const Rat& step) {
    if (step.sign() <= 0) throw std::invalid_argument("oracle grid step must be > 0");
    if (h.sign() <= 0) throw std::invalid_argument("radius h must be > 0");
    const Rat u = step / Rat(3);
    const std::vector<Int> members = sampled_members(spec, depth, x - Rat(2) * h, x + Rat(2) * h, u);
    Axis axis;
    Int k = ((x - h) / step).floor() + 1;
    const Int k_end = ((x + h) / step).ceil() - 1;
    for (; k <= k_end; ++k) {
        const Int centre_index = 3 * k;
        Rat d = h;
        auto it = std::lower_bound(members.begin(), members.end(), centre_index);
        if (it != members.end()) d = std::min(d, Rat(Int(*it - centre_index)) * u);
        if (it != members.begin()) d = std::min(d, Rat(Int(centre_index - *std::prev(it))) * u);
        axis.offset.push_back(abs(Rat(k) * step - x));
        axis.dist.push_back(std::move(d));
    }
    return axis;
}

// Common-denominator scaling to int64 so the 2D scan runs on machine words.
inline std::optional<Int> common_denominator(const std::vector<const std::vector<Rat>*>& lists, const Rat& h) {
    Int den = h.den();
    for (const auto* list : lists)
        for (const auto& r : *list) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.den().get_mpz_t());
    Int limit = Int(1) << 60;
    if (Rat(Int(h.num() * den), h.den()) >= Rat(limit)) return std::nullopt;
    return den;
}

inline std::vector<std::int64_t> scaled(const std::vector<Rat>& v, const Int& den) {
    std::vector<std::int64_t> out;
    out.reserve(v.size());
    for (const auto& r : v) out.push_back((r * Rat(den)).num().get_si());
    return out;
}

// max over (i,j) of min(h - max(a_i, b_j), max(da_i, db_j)).
template <class T>
T best_product_ball(const T& h, const std::vector<T>& a, const std::vector<T>& da, const std::vector<T>& b,
                    const std::vector<T>& db) {
    std::vector<std::size_t> order_a(a.size()), order_b(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) order_a[i] = i;
    for (std::size_t j = 0; j < b.size(); ++j) order_b[j] = j;
    std::sort(order_a.begin(), order_a.end(), [&](std::size_t p, std::size_t q) { return a[p] < a[q]; });
    std::sort(order_b.begin(), order_b.end(), [&](std::size_t p, std::size_t q) { return b[p] < b[q]; });
    T best = T(0);
    for (std::size_t i : order_a) {
        if (!(h - a[i] > best)) break;  // sorted: later centres are worse
        for (std::size_t j : order_b) {
            const T& reach = std::max(a[i], b[j]);
            if (!(h - reach > best)) break;
            T v = std::min(T(h - reach), std::max(da[i], db[j]));
            if (v > best) best = v;
        }
    }
    return best;
}

}  // namespace oracle_detail

inline Rat gamma_oracle_1d(const LevelIndexSpec& spec, int depth, const Rat& x, const Rat& h, const Rat& step) {
    oracle_detail::Axis axis = oracle_detail::build_axis(spec, depth, x, h, step);
    Rat best(0);
    for (std::size_t k = 0; k < axis.offset.size(); ++k) {
        Rat v = std::min(Rat(h - axis.offset[k]), axis.dist[k]);
        if (v > best) best = std::move(v);
    }
    return best;
}

// Largest max-metric ball inside the square window around [x;y] that misses
// A x B. A ball B(z1,r) x B(z2,r) misses A x B iff one factor ball misses its set.
inline Rat gamma_oracle_2d(const LevelIndexSpec& spec_a, const LevelIndexSpec& spec_b, int depth_a, int depth_b,
                           const Rat& x, const Rat& y, const Rat& h, const Rat& step) {
    using namespace oracle_detail;
    Axis ax = build_axis(spec_a, depth_a, x, h, step);
    Axis ay = build_axis(spec_b, depth_b, y, h, step);
    if (ax.offset.empty() || ay.offset.empty()) return Rat(0);
    if (auto den = common_denominator({&ax.offset, &ax.dist, &ay.offset, &ay.dist}, h)) {
        const std::int64_t hs = (h * Rat(*den)).num().get_si();
        std::int64_t best = best_product_ball<std::int64_t>(hs, scaled(ax.offset, *den), scaled(ax.dist, *den),
                                                            scaled(ay.offset, *den), scaled(ay.dist, *den));
        return Rat(Int(static_cast<long>(best)), *den);
    }
    return best_product_ball<Rat>(h, ax.offset, ax.dist, ay.offset, ay.dist);
}

// Endpoints of the components of a truncation, found from member() alone:
// 0, 1, and every level-n boundary point (n active) that survives.
inline std::vector<Rat> component_endpoints_by_membership(const LevelIndexSpec& spec, int depth) {
    std::set<Rat> pts{Rat(0), Rat(1)};
    for (int n : spec.levels_up_to(depth))
        for (auto& p : boundary_points_in_window(n, Rat(0), Rat(1)))
            if (member(spec, depth, p)) pts.insert(std::move(p));
    return {pts.begin(), pts.end()};
}

// Classical middle-thirds recursion: the 2^depth closed intervals left after
// removing open middle thirds depth times.
inline std::vector<std::pair<Rat, Rat>> middle_thirds_intervals(int depth) {
    std::vector<std::pair<Rat, Rat>> cur{{Rat(0), Rat(1)}};
    for (int d = 0; d < depth; ++d) {
        std::vector<std::pair<Rat, Rat>> next;
        next.reserve(cur.size() * 2);
        for (const auto& [a, b] : cur) {
            Rat third = (b - a) / Rat(3);
            next.emplace_back(a, a + third);
            next.emplace_back(b - third, b);
        }
        cur = std::move(next);
    }
    return cur;
}

// Seeded instance source. Draws are from raw 64-bit outputs so sequences are
// identical across standard library implementations.
class InstanceGenerator {
public:
    explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t below(std::uint64_t n) { return rng_() % n; }
    std::uint64_t next() { return rng_(); }

    // Each level of [1, max_level] included independently with probability 1/2.
    LevelIndexSpec random_subset_spec(int max_level) {
        std::set<int> levels;
        for (int n = 1; n <= max_level; ++n)
            if (below(2) == 1) levels.insert(n);
        return LevelIndexSpec::explicit_levels(std::move(levels));
    }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        if (v.empty()) throw std::invalid_argument("pick from empty list");
        return v[below(v.size())];
    }

    // 4 * 3^{-m} * t with m in [m_min, m_max] and t in {1/4, 1/2, 3/4, 1}.
    Rat random_radius(int m_min, int m_max) {
        int m = m_min + static_cast<int>(below(static_cast<std::uint64_t>(m_max - m_min + 1)));
        long t_quarters = static_cast<long>(below(4)) + 1;
        return Rat(4) * inv_pow3(static_cast<unsigned long>(m)) * Rat(Int(t_quarters), Int(4));
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace porosity

#pragma once

// Level gaps D_n, their boundary points M_n, level index sets, and
// depth-truncated sets [0,1] minus the union of D_n over selected levels.
//
// Level n has 3^{n-1} gaps ((1+3i)/3^n, (2+3i)/3^n). Everything that
// touches a single level goes through index arithmetic on i so deep levels
// are usable without enumerating them.

#include "porosity/interval_algebra.hpp"
#include "porosity/rational.hpp"

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace porosity {

inline constexpr std::uint64_t kDefaultMaterializationCap = 2'000'000;

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Which levels n >= 1 take part in a construction.
class LevelIndexSpec {
public:
    enum class Kind { Explicit, QuadraticBlocks, ComplementBlocks, AllLevels };

    static LevelIndexSpec explicit_levels(std::set<int> levels) {
        for (int n : levels)
            if (n < 1) throw std::invalid_argument("levels must be positive, got " + std::to_string(n));
        return LevelIndexSpec(Kind::Explicit, std::move(levels));
    }
    static LevelIndexSpec no_levels() { return LevelIndexSpec(Kind::Explicit, {}); }
    static LevelIndexSpec quadratic_blocks() { return LevelIndexSpec(Kind::QuadraticBlocks, {}); }
    static LevelIndexSpec complement_blocks() { return LevelIndexSpec(Kind::ComplementBlocks, {}); }
    static LevelIndexSpec all_levels() { return LevelIndexSpec(Kind::AllLevels, {}); }

    Kind kind() const { return kind_; }
    const std::set<int>& explicit_set() const { return explicit_; }

    // n lies in the quadratic block [i^2, i^2 + i) with i = floor(sqrt(n)).
    static bool in_quadratic_block(int n) {
        if (n < 1) return false;
        long i = isqrt(n);
        return n < i * i + i;
    }

    bool contains(int n) const {
        if (n < 1) return false;
        switch (kind_) {
            case Kind::Explicit: return explicit_.count(n) != 0;
            case Kind::QuadraticBlocks: return in_quadratic_block(n);
            case Kind::ComplementBlocks: return !in_quadratic_block(n);
            case Kind::AllLevels: return true;
        }
        return false;
    }

    std::vector<int> levels_up_to(int depth) const {
        std::vector<int> out;
        for (int n = 1; n <= depth; ++n)
            if (contains(n)) out.push_back(n);
        return out;
    }

    bool has_levels_beyond(int depth) const {
        if (kind_ != Kind::Explicit) return true;
        return !explicit_.empty() && *explicit_.rbegin() > depth;
    }

    // Grammar form without the depth suffix.
    std::string to_string() const {
        switch (kind_) {
            case Kind::QuadraticBlocks: return "blocks";
            case Kind::ComplementBlocks: return "coblocks";
            case Kind::AllLevels: return "all";
            case Kind::Explicit: break;
        }
        std::string s = "explicit:";
        bool first = true;
        for (int n : explicit_) {
            if (!first) s += ',';
            s += std::to_string(n);
            first = false;
        }
        return s;
    }

    friend bool operator==(const LevelIndexSpec&, const LevelIndexSpec&) = default;

private:
    LevelIndexSpec(Kind k, std::set<int> e) : kind_(k), explicit_(std::move(e)) {}

    static long isqrt(long n) {
        long r = 0;
        while ((r + 1) * (r + 1) <= n) ++r;
        return r;
    }

    Kind kind_;
    std::set<int> explicit_;
};

inline Int level_gap_count(int n) { return n < 1 ? Int(0) : pow3(static_cast<unsigned long>(n - 1)); }

inline OpenInterval level_gap(int n, const Int& i) {
    Int d = pow3(static_cast<unsigned long>(n));
    return OpenInterval(Rat(Int(1 + 3 * i), d), Rat(Int(2 + 3 * i), d));
}

inline GapList level_gaps(int n, std::uint64_t cap = kDefaultMaterializationCap) {
    if (n < 1) return GapList{};
    if (level_gap_count(n) > Int(static_cast<unsigned long>(cap)))
        throw CapExceeded("level " + std::to_string(n) + " has " + level_gap_count(n).get_str() +
                          " gaps, above the cap of " + std::to_string(cap) +
                          "; use level_gaps_in_window");
    std::vector<OpenInterval> raw;
    const unsigned long count = level_gap_count(n).get_ui();
    raw.reserve(count);
    for (unsigned long i = 0; i < count; ++i) raw.push_back(level_gap(n, Int(i)));
    return normalize(std::move(raw));
}

// Inclusive range of gap indices i at level n that meet the open window
// (lo,hi); nullopt when none do.
inline std::optional<std::pair<Int, Int>> level_gap_index_range(int n, const Rat& lo, const Rat& hi) {
    if (n < 1 || !(lo < hi)) return std::nullopt;
    const Rat scale(pow3(static_cast<unsigned long>(n)));
    const Rat three(3);
    Int first = ((lo * scale - Rat(2)) / three).floor();
    Int last = ((hi * scale - Rat(1)) / three).ceil();
    const Int max_index = level_gap_count(n) - 1;
    if (first < 0) first = 0;
    if (last > max_index) last = max_index;
    // The bracket may include one non-meeting gap at each end.
    auto meets = [&](const Int& i) {
        OpenInterval g = level_gap(n, i);
        return g.hi() > lo && g.lo() < hi;
    };
    while (first <= last && !meets(first)) ++first;
    while (last >= first && !meets(last)) --last;
    if (first > last) return std::nullopt;
    return std::make_pair(first, last);
}

inline GapList level_gaps_in_window(int n, const Rat& lo, const Rat& hi) {
    auto range = level_gap_index_range(n, lo, hi);
    if (!range) return GapList{};
    std::vector<OpenInterval> raw;
    for (Int i = range->first; i <= range->second; ++i) raw.push_back(level_gap(n, i));
    return normalize(std::move(raw));
}

// Endpoints of level-n gaps in the closed window [lo,hi], sorted. These are
// exactly k/3^n with 0 < k < 3^n and k not divisible by 3.
inline std::vector<Rat> boundary_points_in_window(int n, const Rat& lo, const Rat& hi) {
    std::vector<Rat> out;
    if (n < 1 || hi < lo) return out;
    const Int scale = pow3(static_cast<unsigned long>(n));
    Int k = (lo * Rat(scale)).ceil();
    Int k_end = (hi * Rat(scale)).floor();
    if (k < 1) k = 1;
    if (k_end > scale - 1) k_end = scale - 1;
    for (; k <= k_end; ++k) {
        if (mpz_divisible_ui_p(k.get_mpz_t(), 3)) continue;
        out.emplace_back(k, scale);
    }
    return out;
}

inline bool inside_level_gap(const Rat& x, int n) {
    if (n < 1 || x.sign() <= 0 || x >= Rat(1)) return false;
    Rat t = x * Rat(pow3(static_cast<unsigned long>(n)));
    if (t.is_integer()) return false;
    return mpz_fdiv_ui(t.floor().get_mpz_t(), 3) == 1;
}

inline bool spec_contains(const LevelIndexSpec& spec, int n) { return spec.contains(n); }

// Membership in [0,1] minus every selected level-n gap with n <= depth, by
// per-level index arithmetic only.
inline bool member(const LevelIndexSpec& spec, int depth, const Rat& x) {
    if (x.sign() < 0 || x > Rat(1)) return false;
    for (int n = 1; n <= depth; ++n)
        if (spec.contains(n) && inside_level_gap(x, n)) return false;
    return true;
}

inline Rat dist_to_level_gaps(const Rat& x, int n) {
    if (n < 1) throw std::invalid_argument("level must be >= 1");
    const Int scale = pow3(static_cast<unsigned long>(n));
    const Rat t = x * Rat(scale);
    const Int max_index = level_gap_count(n) - 1;
    Int centre = ((t - Rat(1)) / Rat(3)).floor();
    std::optional<Rat> best;
    for (int off = -1; off <= 1; ++off) {
        Int i = centre + off;
        if (i < 0) i = 0;
        if (i > max_index) i = max_index;
        Rat a(Int(3 * i + 1)), b(Int(3 * i + 2));
        Rat d = t < a ? a - t : (t > b ? t - b : Rat(0));
        if (!best || d < *best) best = d;
    }
    return *best / Rat(scale);
}

// Distance from x to the union of level gaps for the given levels.
inline Rat dist_to_levels(const Rat& x, const std::vector<int>& levels) {
    if (levels.empty()) throw std::invalid_argument("distance to an empty union of levels");
    std::optional<Rat> best;
    for (int n : levels) {
        Rat d = dist_to_level_gaps(x, n);
        if (!best || d < *best) best = std::move(d);
    }
    return *best;
}

// [0,1] minus the union of D_n over n in spec with n <= depth.
class TernaryDepthSet {
public:
    TernaryDepthSet(LevelIndexSpec spec, int depth, std::optional<GapList> materialized)
        : spec_(std::move(spec)), depth_(depth), materialized_(std::move(materialized)) {
        if (depth_ < 1) throw std::invalid_argument("depth must be >= 1");
    }

    const LevelIndexSpec& spec() const { return spec_; }
    int depth() const { return depth_; }
    std::vector<int> levels() const { return spec_.levels_up_to(depth_); }
    bool is_materialized() const { return materialized_.has_value(); }
    const GapList& gaps() const {
        if (!materialized_) throw std::logic_error("truncation is lazy; use gaps_in_window");
        return *materialized_;
    }

    bool contains(const Rat& x) const { return member(spec_, depth_, x); }

    // Maximal gaps meeting (lo,hi), unclipped. Uses the materialized list when
    // present, otherwise per-level index arithmetic.
    GapList gaps_in_window(const Rat& lo, const Rat& hi) const {
        return materialized_ ? restrict_materialized(lo, hi) : lazy_gaps_in_window(lo, hi);
    }

    GapList lazy_gaps_in_window(const Rat& lo, const Rat& hi) const {
        std::vector<OpenInterval> raw;
        for (int n : levels()) {
            GapList lg = level_gaps_in_window(n, lo, hi);
            raw.insert(raw.end(), lg.begin(), lg.end());
        }
        return normalize(std::move(raw));
    }

    GapList restrict_materialized(const Rat& lo, const Rat& hi) const {
        const GapList& all = gaps();
        std::vector<OpenInterval> raw;
        for (std::size_t i = detail::first_gap_ending_after(all, lo); i < all.size(); ++i) {
            if (!(all[i].lo() < hi)) break;
            raw.push_back(all[i]);
        }
        return normalize(std::move(raw));
    }

    std::string to_string() const { return spec_.to_string() + "@depth:" + std::to_string(depth_); }

private:
    LevelIndexSpec spec_;
    int depth_;
    std::optional<GapList> materialized_;
};

inline Int truncation_gap_count(const LevelIndexSpec& spec, int depth) {
    Int total(0);
    for (int n : spec.levels_up_to(depth)) total += level_gap_count(n);
    return total;
}

inline TernaryDepthSet build_truncation(const LevelIndexSpec& spec, int depth,
                                        std::uint64_t cap = kDefaultMaterializationCap) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    if (truncation_gap_count(spec, depth) >= Int(static_cast<unsigned long>(cap)))
        return TernaryDepthSet(spec, depth, std::nullopt);
    std::vector<OpenInterval> raw;
    for (int n : spec.levels_up_to(depth)) {
        const unsigned long count = level_gap_count(n).get_ui();
        for (unsigned long i = 0; i < count; ++i) raw.push_back(level_gap(n, Int(i)));
    }
    return TernaryDepthSet(spec, depth, normalize(std::move(raw)));
}

// Materialization cap, overridable through POROSITY_DEPTH_CAP.
inline std::uint64_t materialization_cap_from_env() {
    const char* v = std::getenv("POROSITY_DEPTH_CAP");
    if (!v || !*v) return kDefaultMaterializationCap;
    char* end = nullptr;
    unsigned long long cap = std::strtoull(v, &end, 10);
    if (*end != '\0' || cap == 0)
        throw std::invalid_argument(std::string("POROSITY_DEPTH_CAP must be a positive integer, got '") +
                                    v + "'");
    return cap;
}

}  // namespace porosity

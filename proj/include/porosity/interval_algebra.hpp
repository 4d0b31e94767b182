#pragma once

// Open-interval gap lists over [0,1].
//
// A GapList stands for the closed set [0,1] minus the union of its gaps.
// The ambient space is the whole real line, so query windows may extend
// past 0 or 1 and see the exterior as empty space.

#include "porosity/rational.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace porosity {

class OpenInterval {
public:
    OpenInterval(Rat lo, Rat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (!(lo_ < hi_))
            throw std::invalid_argument("open interval needs lo < hi, got (" + lo_.to_string() +
                                        ", " + hi_.to_string() + ")");
    }

    const Rat& lo() const { return lo_; }
    const Rat& hi() const { return hi_; }
    Rat length() const { return hi_ - lo_; }
    Rat midpoint() const { return (lo_ + hi_) / Rat(2); }
    bool contains(const Rat& x) const { return lo_ < x && x < hi_; }

    friend bool operator==(const OpenInterval&, const OpenInterval&) = default;

private:
    Rat lo_;
    Rat hi_;
};

inline std::string to_string(const OpenInterval& iv) {
    return "(" + iv.lo().to_string() + "," + iv.hi().to_string() + ")";
}

// Sorted, non-overlapping gaps inside [0,1]. Touching gaps (a,b),(b,c) stay
// separate: b is a point of the closed set.
class GapList {
public:
    GapList() = default;

    const std::vector<OpenInterval>& gaps() const { return gaps_; }
    std::size_t size() const { return gaps_.size(); }
    bool empty() const { return gaps_.empty(); }
    auto begin() const { return gaps_.begin(); }
    auto end() const { return gaps_.end(); }
    const OpenInterval& operator[](std::size_t i) const { return gaps_[i]; }

    friend bool operator==(const GapList&, const GapList&) = default;

    friend GapList normalize(std::vector<OpenInterval> raw);

private:
    explicit GapList(std::vector<OpenInterval> g) : gaps_(std::move(g)) {}
    std::vector<OpenInterval> gaps_;
};

// Maximal open subintervals of a window that miss the closed set.
struct WindowComponents {
    std::vector<OpenInterval> components;
};

inline GapList normalize(std::vector<OpenInterval> raw) {
    for (const auto& iv : raw) {
        if (iv.lo().sign() < 0 || iv.hi() > Rat(1))
            throw std::invalid_argument("gap " + to_string(iv) + " is not inside [0,1]");
    }
    std::sort(raw.begin(), raw.end(), [](const OpenInterval& a, const OpenInterval& b) {
        if (a.lo() != b.lo()) return a.lo() < b.lo();
        return a.hi() < b.hi();
    });
    std::vector<OpenInterval> out;
    out.reserve(raw.size());
    for (auto& iv : raw) {
        // Strict comparison: a gap starting exactly at the previous end only touches it.
        if (!out.empty() && iv.lo() < out.back().hi()) {
            if (iv.hi() > out.back().hi()) out.back() = OpenInterval(out.back().lo(), iv.hi());
        } else {
            out.push_back(std::move(iv));
        }
    }
    return GapList(std::move(out));
}

namespace detail {

// Index of the first gap whose hi exceeds x.
inline std::size_t first_gap_ending_after(const GapList& g, const Rat& x) {
    const auto& v = g.gaps();
    auto it = std::upper_bound(v.begin(), v.end(), x,
                               [](const Rat& value, const OpenInterval& iv) { return value < iv.hi(); });
    return static_cast<std::size_t>(it - v.begin());
}

}  // namespace detail

inline WindowComponents window_components(const GapList& gaps, const Rat& lo, const Rat& hi) {
    if (!(lo < hi)) throw std::invalid_argument("window needs lo < hi");
    WindowComponents out;
    const Rat zero(0), one(1);
    if (lo < zero) out.components.emplace_back(lo, std::min(hi, zero));
    if (hi > zero && lo < one) {
        const auto& v = gaps.gaps();
        for (std::size_t i = detail::first_gap_ending_after(gaps, lo); i < v.size(); ++i) {
            const auto& g = v[i];
            if (!(g.lo() < hi)) break;
            // Gaps live in [0,1] and 0, 1 always belong to the closed set, so a
            // clipped gap never merges with an exterior ray.
            out.components.emplace_back(std::max(g.lo(), lo), std::min(g.hi(), hi));
        }
    }
    if (hi > one) out.components.emplace_back(std::max(lo, one), hi);
    return out;
}

inline bool point_in_closed(const GapList& gaps, const Rat& x) {
    if (x.sign() < 0 || x > Rat(1)) return false;
    std::size_t i = detail::first_gap_ending_after(gaps, x);
    return i == gaps.size() || !gaps[i].contains(x);
}

// Distance to [0,1] minus the gaps. The closed set always contains 0 and 1
// because gaps are open subsets of [0,1], so it is never empty.
inline Rat dist_to_closed(const GapList& gaps, const Rat& x) {
    if (x.sign() < 0) return -x;
    if (x > Rat(1)) return x - Rat(1);
    std::size_t i = detail::first_gap_ending_after(gaps, x);
    if (i == gaps.size() || !gaps[i].contains(x)) return Rat(0);
    return std::min(x - gaps[i].lo(), gaps[i].hi() - x);
}

inline Rat total_length(std::span<const OpenInterval> ivs) {
    Rat sum(0);
    for (const auto& iv : ivs) sum += iv.length();
    return sum;
}

}  // namespace porosity

#pragma once

// The gap functional gamma(x, h, A): the largest radius of an open ball inside
// B(x,h) that misses A. For sets on the line this is half the length of the
// longest maximal open subinterval of (x-h, x+h) disjoint from A. The ratio
// delta(h) = 2 * gamma / h is the finite-scale quantity whose liminf/limsup
// as h -> 0 define lower/upper porosity; only explicit grids of h are ever
// evaluated here.

#include "porosity/interval_algebra.hpp"
#include "porosity/rational.hpp"
#include "porosity/ternary_sets.hpp"

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace porosity {

struct GammaResult {
    Rat value;
    std::optional<Rat> witness_center;  // set iff value > 0
    int depth_used = 0;
    bool stabilized = true;
};

struct DeltaResult {
    Rat value;
    bool stabilized = true;
};

namespace detail {

// Longest component; ties go to the leftmost one.
class BestComponent {
public:
    void offer(const Rat& lo, const Rat& hi) {
        if (!(lo < hi)) return;
        Rat len = hi - lo;
        if (!best_len_ || len > *best_len_ || (len == *best_len_ && lo < best_lo_)) {
            best_len_ = std::move(len);
            best_lo_ = lo;
            best_hi_ = hi;
        }
    }

    GammaResult result(int depth_used, bool stabilized) const {
        GammaResult r;
        r.depth_used = depth_used;
        r.stabilized = stabilized;
        if (best_len_) {
            r.value = *best_len_ / Rat(2);
            r.witness_center = (best_lo_ + best_hi_) / Rat(2);
        }
        return r;
    }

private:
    std::optional<Rat> best_len_;
    Rat best_lo_, best_hi_;
};

inline void require_positive_radius(const Rat& h) {
    if (h.sign() <= 0) throw std::invalid_argument("radius h must be > 0, got " + h.to_string());
}

}  // namespace detail

// Exact gamma against an explicit gap list.
inline GammaResult gamma(const GapList& gaps, const Rat& x, const Rat& h) {
    detail::require_positive_radius(h);
    detail::BestComponent best;
    for (const auto& c : window_components(gaps, x - h, x + h).components) best.offer(c.lo(), c.hi());
    return best.result(0, true);
}

// Exact gamma against a depth-N truncation, at the truncation's depth.
//
// Gaps of different levels are nested or disjoint and never touch, so every
// maximal component is a raw level gap (clipped to the window) or an exterior
// ray. Per level only the first two and the last meeting gap can differ in
// clipped length, which keeps this O(depth) regardless of h.
inline GammaResult gamma(const TernaryDepthSet& set, const Rat& x, const Rat& h) {
    detail::require_positive_radius(h);
    const Rat a = x - h, b = x + h;
    const Rat zero(0), one(1);
    detail::BestComponent best;
    if (a < zero) best.offer(a, std::min(b, zero));
    if (b > one) best.offer(std::max(a, one), b);
    for (int n : set.levels()) {
        auto range = level_gap_index_range(n, a, b);
        if (!range) continue;
        auto offer_index = [&](const Int& i) {
            OpenInterval g = level_gap(n, i);
            best.offer(std::max(g.lo(), a), std::min(g.hi(), b));
        };
        offer_index(range->first);
        if (range->first < range->second) {
            offer_index(Int(range->first + 1));
            offer_index(range->second);
        }
    }
    GammaResult r = best.result(set.depth(), true);
    r.stabilized = r.value >= inv_pow3(static_cast<unsigned long>(set.depth() + 1)) ||
                   !set.spec().has_levels_beyond(set.depth());
    return r;
}

inline TernaryDepthSet lazy_truncation(const LevelIndexSpec& spec, int depth) {
    return TernaryDepthSet(spec, depth, std::nullopt);
}

// Deepens from start_depth until the result is stabilized or depth_cap is
// reached. An unstabilized result is a lower bound: deeper levels can only
// add gaps.
inline GammaResult gamma_deepening(const LevelIndexSpec& spec, const Rat& x, const Rat& h,
                                   int start_depth, int depth_cap) {
    if (start_depth < 1 || depth_cap < start_depth)
        throw std::invalid_argument("need 1 <= start_depth <= depth_cap");
    GammaResult r;
    for (int depth = start_depth; depth <= depth_cap; ++depth) {
        r = gamma(lazy_truncation(spec, depth), x, h);
        if (r.stabilized) break;
    }
    return r;
}

template <class Set>
DeltaResult delta(const Set& set, const Rat& x, const Rat& h) {
    GammaResult g = gamma(set, x, h);
    return {Rat(2) * g.value / h, g.stabilized};
}

// Max-metric product: gamma and delta of A x B at [x;y] are the maxima of the
// factor values at the same h.
inline Rat delta_product(const Rat& delta_a, const Rat& delta_b) { return std::max(delta_a, delta_b); }
inline Rat gamma_product(const Rat& gamma_a, const Rat& gamma_b) { return std::max(gamma_a, gamma_b); }

// [4/3^{n+1}, 4/3^n]
struct ScaleWindow {
    int level;
    Rat lo;
    Rat hi;
};

inline ScaleWindow scale_window(int n) {
    if (n < 1) throw std::invalid_argument("scale window level must be >= 1");
    return {n, Rat(4) * inv_pow3(static_cast<unsigned long>(n + 1)),
            Rat(4) * inv_pow3(static_cast<unsigned long>(n))};
}

// K equally spaced points of [lo,hi], endpoints included.
inline std::vector<Rat> window_samples(const ScaleWindow& w, int count) {
    if (count < 2) throw std::invalid_argument("need at least 2 samples per window");
    std::vector<Rat> out;
    out.reserve(static_cast<std::size_t>(count));
    const Rat step = (w.hi - w.lo) / Rat(count - 1);
    for (int k = 0; k < count; ++k) out.push_back(w.lo + step * Rat(k));
    return out;
}

struct QuarterSample {
    Rat h;
    Rat delta;
};

// delta at every sampled h of the level-n window; preconditions as for
// quarter_bound_check.
inline std::vector<QuarterSample> quarter_bound_samples(const TernaryDepthSet& set, const Rat& x, int n,
                                                        int samples) {
    if (!set.spec().contains(n) || n > set.depth())
        throw std::invalid_argument("level " + std::to_string(n) + " is not an active level of " +
                                    set.to_string());
    if (!set.contains(x)) throw std::invalid_argument(x.to_string() + " is not a member of " + set.to_string());
    std::vector<QuarterSample> out;
    for (auto& h : window_samples(scale_window(n), samples)) {
        Rat d = delta(set, x, h).value;
        out.push_back({std::move(h), std::move(d)});
    }
    return out;
}

inline bool quarter_bound_check(const LevelIndexSpec& spec, int depth, const Rat& x, int n, int samples = 25) {
    const Rat quarter(Int(1), Int(4));
    for (const auto& s : quarter_bound_samples(lazy_truncation(spec, depth), x, n, samples))
        if (s.delta < quarter) return false;
    return true;
}

struct ProfileSample {
    Rat h;
    Rat gamma;
    Rat delta;
    bool stabilized = true;
};

struct ProfileSummary {
    Rat min_delta;
    Rat argmin_h;
    Rat max_delta;
    Rat argmax_h;
};

// Finite-grid summary; an estimate of the porosity limits, never the limits.
inline ProfileSummary summarize(const std::vector<ProfileSample>& samples) {
    if (samples.empty()) throw std::invalid_argument("empty profile");
    ProfileSummary s{samples[0].delta, samples[0].h, samples[0].delta, samples[0].h};
    for (const auto& p : samples) {
        if (p.delta < s.min_delta) { s.min_delta = p.delta; s.argmin_h = p.h; }
        if (p.delta > s.max_delta) { s.max_delta = p.delta; s.argmax_h = p.h; }
    }
    return s;
}

struct Profile {
    Rat point;
    std::vector<ProfileSample> samples;
    ProfileSummary summary;
    bool all_stabilized = true;
};

template <class Set>
Profile scale_profile(const Set& set, const Rat& x, const std::vector<Rat>& grid) {
    if (grid.empty()) throw std::invalid_argument("empty h grid");
    Profile p;
    p.point = x;
    for (const auto& h : grid) {
        GammaResult g = gamma(set, x, h);
        p.all_stabilized = p.all_stabilized && g.stabilized;
        Rat d = Rat(2) * g.value / h;
        p.samples.push_back({h, std::move(g.value), std::move(d), g.stabilized});
    }
    p.summary = summarize(p.samples);
    return p;
}

struct ProductProfile {
    Profile a;
    Profile b;
    std::vector<ProfileSample> combined;
    ProfileSummary summary;
};

template <class SetA, class SetB>
ProductProfile product_profile(const SetA& set_a, const SetB& set_b, const Rat& x, const Rat& y,
                               const std::vector<Rat>& grid) {
    ProductProfile p{scale_profile(set_a, x, grid), scale_profile(set_b, y, grid), {}, {}};
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto& sa = p.a.samples[k];
        const auto& sb = p.b.samples[k];
        p.combined.push_back({grid[k], gamma_product(sa.gamma, sb.gamma), delta_product(sa.delta, sb.delta),
                              sa.stabilized && sb.stabilized});
    }
    p.summary = summarize(p.combined);
    return p;
}

// h_max * ratio^k for k = 0..count-1.
inline std::vector<Rat> geometric_grid(const Rat& h_max, const Rat& ratio, int count) {
    if (h_max.sign() <= 0) throw std::invalid_argument("h-max must be > 0");
    if (ratio.sign() <= 0 || ratio >= Rat(1)) throw std::invalid_argument("ratio must lie in (0,1)");
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    std::vector<Rat> out;
    Rat h = h_max;
    for (int k = 0; k < count; ++k) {
        out.push_back(h);
        h *= ratio;
    }
    return out;
}

inline void write_profile_csv(std::ostream& os, const std::vector<ProfileSample>& samples) {
    os << "h_rat,h_dec,gamma_rat,gamma_dec,delta_rat,delta_dec,stabilized\n";
    for (const auto& s : samples) {
        os << s.h.to_string() << ',' << s.h.to_decimal() << ',' << s.gamma.to_string() << ','
           << s.gamma.to_decimal() << ',' << s.delta.to_string() << ',' << s.delta.to_decimal() << ','
           << (s.stabilized ? "true" : "false") << '\n';
    }
}

// Is every point of [lo,hi] within eps of a listed point? Decided by sweeping
// the closed balls [p-eps, p+eps] in order.
inline bool epsilon_net_check(const std::vector<Rat>& sorted_points, const Rat& eps, const Rat& lo,
                              const Rat& hi) {
    if (hi < lo) throw std::invalid_argument("net check needs lo <= hi");
    if (eps.sign() < 0) throw std::invalid_argument("eps must be >= 0");
    std::optional<Rat> reach;  // [lo, *reach] is covered
    for (const auto& p : sorted_points) {
        if (p + eps < lo) continue;
        const Rat& frontier = reach ? *reach : lo;
        if (p - eps > frontier) return false;
        Rat r = p + eps;
        if (!reach || r > *reach) reach = std::move(r);
        if (*reach >= hi) return true;
    }
    return false;
}

class TheoremPreconditionError : public std::invalid_argument {
public:
    enum class Kind { LevelNotInBlocks, NotLevelBoundaryPoint, IndexTooSmall, NotInComplementSet };
    TheoremPreconditionError(Kind k, const std::string& what) : std::invalid_argument(what), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct TheoremScaleCheck {
    Rat h;
    Rat delta;
    Rat expected;
    bool equal = false;
    GammaResult gamma;
};

// delta of the complement-block set at x in M_{n0} and h = 3^{-(i^2-1)},
// against 3^{-(i+1)}. x must avoid the complement-block gaps and i^2 > n0.
inline TheoremScaleCheck theorem_scale_equality(const Rat& x, int n0, int i) {
    using Kind = TheoremPreconditionError::Kind;
    if (!LevelIndexSpec::in_quadratic_block(n0))
        throw TheoremPreconditionError(Kind::LevelNotInBlocks,
                                       "level " + std::to_string(n0) + " is not in a quadratic block");
    const Int scale = pow3(static_cast<unsigned long>(n0));
    const Rat k = x * Rat(scale);
    if (!k.is_integer() || k.sign() <= 0 || k >= Rat(scale) || mpz_divisible_ui_p(k.num().get_mpz_t(), 3))
        throw TheoremPreconditionError(Kind::NotLevelBoundaryPoint,
                                       x.to_string() + " is not a boundary point of level " + std::to_string(n0));
    if (i < 1 || static_cast<long>(i) * i <= n0)
        throw TheoremPreconditionError(Kind::IndexTooSmall,
                                       "need i^2 > n0, got i=" + std::to_string(i) + ", n0=" + std::to_string(n0));
    const int depth = i * i + i + 2;
    const LevelIndexSpec complement = LevelIndexSpec::complement_blocks();
    if (!member(complement, depth, x))
        throw TheoremPreconditionError(Kind::NotInComplementSet,
                                       x.to_string() + " lies in a gap of the complement-block set");
    TheoremScaleCheck out;
    out.h = inv_pow3(static_cast<unsigned long>(i * i - 1));
    out.gamma = gamma(lazy_truncation(complement, depth), x, out.h);
    out.delta = Rat(2) * out.gamma.value / out.h;
    out.expected = inv_pow3(static_cast<unsigned long>(i + 1));
    out.equal = out.delta == out.expected;
    return out;
}

}  // namespace porosity

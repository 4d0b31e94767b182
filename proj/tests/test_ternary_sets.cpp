#include "brute_force.hpp"
#include "porosity/ternary_sets.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace porosity;

namespace {

Rat q(long n, long d) { return Rat(Int(n), Int(d)); }

std::vector<OpenInterval> filter_window(const GapList& g, const Rat& lo, const Rat& hi) {
    std::vector<OpenInterval> out;
    for (const auto& iv : g)
        if (iv.hi() > lo && iv.lo() < hi) out.push_back(iv);
    return out;
}

std::vector<LevelIndexSpec> sample_specs() {
    return {LevelIndexSpec::quadratic_blocks(), LevelIndexSpec::complement_blocks(), LevelIndexSpec::all_levels(),
            LevelIndexSpec::explicit_levels({1}), LevelIndexSpec::explicit_levels({2, 5, 7}),
            LevelIndexSpec::explicit_levels({3, 4, 9, 10}), LevelIndexSpec::no_levels()};
}

}  // namespace

TEST(LevelGaps, FirstLevels) {
    EXPECT_TRUE(level_gaps(0).empty());
    std::vector<OpenInterval> one{OpenInterval(q(1, 3), q(2, 3))};
    EXPECT_EQ(level_gaps(1).gaps(), one);
    std::vector<OpenInterval> two{OpenInterval(q(1, 9), q(2, 9)), OpenInterval(q(4, 9), q(5, 9)),
                                  OpenInterval(q(7, 9), q(8, 9))};
    EXPECT_EQ(level_gaps(2).gaps(), two);
}

TEST(LevelGaps, CapExceeded) {
    EXPECT_THROW(level_gaps(5, 10), CapExceeded);
    EXPECT_EQ(level_gaps(3, 9).size(), 9u);
}

TEST(LevelGaps, TotalLengthIsOneThird) {
    for (int n = 1; n <= 8; ++n) EXPECT_EQ(total_length(level_gaps(n).gaps()), q(1, 3)) << n;
}

TEST(LevelGapsInWindow, Examples) {
    std::vector<OpenInterval> want{OpenInterval(q(4, 9), q(5, 9))};
    EXPECT_EQ(level_gaps_in_window(2, q(2, 5), q(3, 5)).gaps(), want);
    // the two nearest level-8 gaps end at 2186/6561 and start at 2188/6561
    EXPECT_TRUE(level_gaps_in_window(8, q(2186, 6561), q(2188, 6561)).empty());
    EXPECT_TRUE(filter_window(level_gaps(8), q(2186, 6561), q(2188, 6561)).empty());
    auto left = level_gaps_in_window(8, q(2185, 6561), q(2187, 6561));
    ASSERT_EQ(left.size(), 1u);
    EXPECT_EQ(left[0], OpenInterval(q(2185, 6561), q(2186, 6561)));
    for (int n = 1; n <= 30; n += 7) EXPECT_TRUE(level_gaps_in_window(n, Rat(2), Rat(3)).empty());
}

TEST(LevelGapsInWindow, IndexBracketAgreesWithFiltering) {
    std::mt19937_64 rng(17);
    for (int n = 1; n <= 7; ++n) {
        GapList all = level_gaps(n);
        for (int trial = 0; trial < 200; ++trial) {
            Rat lo = brute::random_rational(rng, -100, 2200, 2187);
            Rat hi = lo + brute::random_rational(rng, 1, 700, 2187);
            EXPECT_EQ(level_gaps_in_window(n, lo, hi).gaps(), filter_window(all, lo, hi))
                << "n=" << n << " (" << lo << "," << hi << ")";
        }
    }
}

TEST(BoundaryPoints, Examples) {
    std::vector<Rat> m1{q(1, 3), q(2, 3)};
    EXPECT_EQ(boundary_points_in_window(1, Rat(0), Rat(1)), m1);
    std::vector<Rat> m2{q(1, 9), q(2, 9), q(4, 9), q(5, 9), q(7, 9), q(8, 9)};
    EXPECT_EQ(boundary_points_in_window(2, Rat(0), Rat(1)), m2);
    std::vector<Rat> clipped{q(2, 9), q(4, 9)};
    EXPECT_EQ(boundary_points_in_window(2, q(2, 9), q(4, 9)), clipped);
}

TEST(BoundaryPoints, CountAndEndpointEnumeration) {
    for (int n = 1; n <= 8; ++n) {
        auto pts = boundary_points_in_window(n, Rat(0), Rat(1));
        EXPECT_EQ(Int(static_cast<unsigned long>(pts.size())), 2 * level_gap_count(n));
        std::vector<Rat> ends;
        for (const auto& g : level_gaps(n)) {
            ends.push_back(g.lo());
            ends.push_back(g.hi());
        }
        EXPECT_EQ(pts, ends);
    }
}

// Every grid point k*3^{-(n+2)} of [0,1] has a level-n boundary point within 3^{-n}.
TEST(Observation, BoundarySetIsANet) {
    for (int n = 1; n <= 8; ++n) {
        auto pts = boundary_points_in_window(n, Rat(0), Rat(1));
        const long grid = static_cast<long>(pow3(static_cast<unsigned long>(n + 2)).get_ui());
        const Rat eps = inv_pow3(static_cast<unsigned long>(n));
        for (long k = 0; k <= grid; ++k) {
            Rat x{Int(k), Int(grid)};
            auto it = std::lower_bound(pts.begin(), pts.end(), x);
            Rat d = eps + Rat(1);
            if (it != pts.end()) d = std::min(d, Rat(*it - x));
            if (it != pts.begin()) d = std::min(d, Rat(x - *std::prev(it)));
            ASSERT_LE(d, eps) << "n=" << n << " x=" << x;
        }
    }
}

TEST(Observation, BoundarySetsDisjointAndNesting) {
    std::vector<std::vector<Rat>> m(9);
    for (int n = 1; n <= 8; ++n) m[static_cast<std::size_t>(n)] = boundary_points_in_window(n, Rat(0), Rat(1));
    for (int n = 1; n <= 8; ++n) {
        for (int k = 1; k < n; ++k) {
            std::vector<Rat> common;
            const auto& a = m[static_cast<std::size_t>(k)];
            const auto& b = m[static_cast<std::size_t>(n)];
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
            EXPECT_TRUE(common.empty()) << k << " " << n;
        }
        for (int k = 1; k <= 8; ++k) {
            auto raw = brute::level_union({k});
            bool hits = std::any_of(m[static_cast<std::size_t>(n)].begin(), m[static_cast<std::size_t>(n)].end(),
                                    [&](const Rat& p) { return !brute::in_closed(raw, p); });
            EXPECT_EQ(hits, k < n) << "boundary of " << n << " vs gaps of " << k;
        }
    }
}

TEST(Observation, AllLevelsIsMiddleThirds) {
    // middle-thirds recursion written out on integer numerators over 3^N
    for (int depth = 1; depth <= 8; ++depth) {
        const long scale = static_cast<long>(pow3(static_cast<unsigned long>(depth)).get_ui());
        std::vector<std::pair<long, long>> closed{{0, scale}};
        for (int d = 0; d < depth; ++d) {
            std::vector<std::pair<long, long>> next;
            for (auto [a, b] : closed) {
                long t = (b - a) / 3;
                next.emplace_back(a, a + t);
                next.emplace_back(b - t, b);
            }
            closed = next;
        }
        std::vector<OpenInterval> removed;
        for (std::size_t k = 0; k + 1 < closed.size(); ++k)
            removed.emplace_back(Rat(Int(closed[k].second), Int(scale)), Rat(Int(closed[k + 1].first), Int(scale)));
        TernaryDepthSet t = build_truncation(LevelIndexSpec::all_levels(), depth);
        ASSERT_TRUE(t.is_materialized());
        EXPECT_EQ(t.gaps().gaps(), removed) << depth;
    }
}

TEST(SpecContains, BlockRules) {
    auto blocks = LevelIndexSpec::quadratic_blocks();
    auto co = LevelIndexSpec::complement_blocks();
    EXPECT_TRUE(spec_contains(blocks, 4));
    EXPECT_FALSE(spec_contains(blocks, 12));
    EXPECT_TRUE(spec_contains(co, 2));
    std::vector<int> want{1, 4, 5, 9, 10, 11, 16, 17, 18, 19};
    EXPECT_EQ(blocks.levels_up_to(20), want);
    for (int n = 1; n <= 200; ++n) EXPECT_NE(blocks.contains(n), co.contains(n)) << n;
    // brute force from the block list
    for (int n = 1; n <= 200; ++n) {
        bool in = false;
        for (int i = 1; i * i <= n; ++i) in = in || (i * i <= n && n < i * i + i);
        EXPECT_EQ(blocks.contains(n), in) << n;
    }
    EXPECT_FALSE(blocks.contains(0));
    EXPECT_TRUE(LevelIndexSpec::all_levels().contains(77));
    EXPECT_THROW(LevelIndexSpec::explicit_levels({0, 2}), std::invalid_argument);
}

TEST(BuildTruncation, Examples) {
    auto one = build_truncation(LevelIndexSpec::explicit_levels({1}), 3);
    std::vector<OpenInterval> d1{OpenInterval(q(1, 3), q(2, 3))};
    EXPECT_EQ(one.gaps().gaps(), d1);

    auto cantor2 = build_truncation(LevelIndexSpec::all_levels(), 2);
    std::vector<OpenInterval> c2{OpenInterval(q(1, 9), q(2, 9)), OpenInterval(q(1, 3), q(2, 3)),
                                 OpenInterval(q(7, 9), q(8, 9))};
    EXPECT_EQ(cantor2.gaps().gaps(), c2);

    auto two = build_truncation(LevelIndexSpec::explicit_levels({2}), 5);
    EXPECT_EQ(two.gaps(), level_gaps(2));

    auto capped = build_truncation(LevelIndexSpec::all_levels(), 12, 1000);
    EXPECT_FALSE(capped.is_materialized());
    EXPECT_THROW((void)capped.gaps(), std::logic_error);
    EXPECT_THROW(build_truncation(LevelIndexSpec::all_levels(), 0), std::invalid_argument);
}

TEST(BuildTruncation, DeepeningNeverMergesGaps) {
    for (const auto& spec : sample_specs()) {
        auto prev = build_truncation(spec, 1);
        for (int depth = 2; depth <= 9; ++depth) {
            auto cur = build_truncation(spec, depth);
            for (const auto& g : prev.gaps())
                EXPECT_TRUE(std::find(cur.gaps().begin(), cur.gaps().end(), g) != cur.gaps().end());
            prev = cur;
        }
    }
}

TEST(LazyWindows, AgreeWithMaterialized) {
    std::mt19937_64 rng(23);
    for (const auto& spec : sample_specs()) {
        for (int depth = 1; depth <= 10; ++depth) {
            auto t = build_truncation(spec, depth);
            ASSERT_TRUE(t.is_materialized());
            for (int trial = 0; trial < 100; ++trial) {
                Rat lo = brute::random_rational(rng, -2000, 61000, 59049);
                Rat hi = lo + brute::random_rational(rng, 1, 6000, 59049);
                EXPECT_EQ(t.lazy_gaps_in_window(lo, hi), t.restrict_materialized(lo, hi))
                    << t.to_string() << " (" << lo << "," << hi << ")";
            }
        }
    }
}

TEST(Member, Examples) {
    for (int depth : {1, 5, 20, 40}) EXPECT_TRUE(member(LevelIndexSpec::quadratic_blocks(), depth, q(1, 3)));
    EXPECT_FALSE(member(LevelIndexSpec::complement_blocks(), 2, q(1, 2)));
    EXPECT_TRUE(member(LevelIndexSpec::complement_blocks(), 1, q(1, 2)));
    for (const auto& spec : sample_specs()) EXPECT_FALSE(member(spec, 10, Rat(-1)));
}

TEST(Member, AgreesWithMaterializedTruncation) {
    std::mt19937_64 rng(29);
    for (const auto& spec : sample_specs()) {
        for (int depth : {1, 3, 6, 9}) {
            auto t = build_truncation(spec, depth);
            for (int k = 0; k < 300; ++k) {
                Rat x = brute::random_rational(rng, -100, 59149, 59049);
                EXPECT_EQ(member(spec, depth, x), point_in_closed(t.gaps(), x)) << t.to_string() << " " << x;
            }
            for (const auto& g : t.gaps()) {
                EXPECT_TRUE(member(spec, depth, g.lo()));
                EXPECT_FALSE(member(spec, depth, g.midpoint()));
            }
        }
    }
}

TEST(DistToLevelGaps, Examples) {
    EXPECT_EQ(dist_to_level_gaps(q(1, 3), 2), q(1, 9));
    EXPECT_EQ(dist_to_level_gaps(q(1, 3), 6), q(1, 729));
    EXPECT_EQ(dist_to_level_gaps(Rat(0), 1), q(1, 3));
    EXPECT_EQ(dist_to_level_gaps(q(1, 2), 1), Rat(0));
    EXPECT_EQ(dist_to_level_gaps(Rat(2), 1), q(4, 3));
}

TEST(DistToLevelGaps, AgreesWithEnumeration) {
    std::mt19937_64 rng(31);
    for (int n = 1; n <= 6; ++n) {
        auto all = level_gaps(n);
        for (int k = 0; k < 300; ++k) {
            Rat x = brute::random_rational(rng, -500, 3500, 2916);
            Rat best = Rat(10);
            for (const auto& g : all) {
                Rat d = x <= g.lo() ? Rat(g.lo() - x) : (x >= g.hi() ? Rat(x - g.hi()) : Rat(0));
                best = std::min(best, d);
            }
            EXPECT_EQ(dist_to_level_gaps(x, n), best) << "n=" << n << " x=" << x;
        }
    }
}

TEST(Serialization, SpecText) {
    EXPECT_EQ(LevelIndexSpec::explicit_levels({5, 1, 2}).to_string(), "explicit:1,2,5");
    EXPECT_EQ(build_truncation(LevelIndexSpec::complement_blocks(), 12).to_string(), "coblocks@depth:12");
}

TEST(MaterializationCap, EnvironmentOverride) {
    ::setenv("POROSITY_DEPTH_CAP", "1234", 1);
    EXPECT_EQ(materialization_cap_from_env(), 1234u);
    ::setenv("POROSITY_DEPTH_CAP", "abc", 1);
    EXPECT_THROW(materialization_cap_from_env(), std::invalid_argument);
    ::unsetenv("POROSITY_DEPTH_CAP");
    EXPECT_EQ(materialization_cap_from_env(), kDefaultMaterializationCap);
}

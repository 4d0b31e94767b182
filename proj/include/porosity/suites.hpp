#pragma once

// Named verification batteries. Each battery is deterministic in its config;
// random instances come from InstanceGenerator seeded with config.seed plus a
// fixed per-battery offset, so batteries can be rerun independently.

#include "porosity/interval_algebra.hpp"
#include "porosity/oracles.hpp"
#include "porosity/porosity.hpp"
#include "porosity/rational.hpp"
#include "porosity/ternary_sets.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace porosity {

struct SuiteFailure {
    std::string instance;
    std::string expected;
    std::string actual;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t instances_run = 0;
    std::vector<SuiteFailure> failures;

    bool passed() const { return failures.empty(); }

    void check(bool ok, const std::string& instance, const std::string& expected, const std::string& actual) {
        ++instances_run;
        if (!ok) failures.push_back({instance, expected, actual});
    }

    void absorb(const SuiteReport& other) {
        instances_run += other.instances_run;
        failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["suite"] = suite;
        j["seed"] = seed;
        j["instances_run"] = instances_run;
        j["failures"] = nlohmann::ordered_json::array();
        for (const auto& f : failures)
            j["failures"].push_back({{"instance", f.instance}, {"expected", f.expected}, {"actual", f.actual}});
        return j;
    }
};

struct SuiteConfig {
    std::uint64_t seed = 1;
    OracleConfig oracle{};

    int observation_max_level = 8;
    int density_depth = 10;

    int quarter_depth = 10;
    int quarter_points = 50;
    int quarter_samples = 25;

    int product_depth = 11;
    int product_pairs = 20;
    int product_grid_points = 60;
    Rat product_grid_ratio = Rat(Int(5), Int(6));

    int oracle_1d_instances = 100;
    int oracle_2d_instances = 20;
    int stabilization_instances = 100;
    int stabilization_depth_cap = 18;

    std::vector<int> theorem_indices{2, 3, 4};
    std::vector<Rat> theorem_points{Rat(Int(1), Int(3)), Rat(Int(2), Int(3)), Rat(Int(1), Int(81))};
};

namespace suite_detail {

inline const Rat& quarter() {
    static const Rat q(Int(1), Int(4));
    return q;
}

inline std::string levels_text(const LevelIndexSpec& spec, int depth) {
    return spec.to_string() + "@depth:" + std::to_string(depth);
}

inline std::vector<Rat> closed_set_endpoints(const GapList& gaps) {
    std::vector<Rat> pts{Rat(0)};
    for (const auto& g : gaps) {
        pts.push_back(g.lo());
        pts.push_back(g.hi());
    }
    pts.push_back(Rat(1));
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// Half component endpoints, half random members k/3^{depth+2}.
inline std::vector<Rat> sample_members(const TernaryDepthSet& set, int count, InstanceGenerator& gen) {
    std::vector<Rat> endpoints = closed_set_endpoints(set.gaps());
    std::vector<Rat> out;
    const int from_endpoints = count / 2;
    for (int k = 0; k < from_endpoints; ++k) out.push_back(gen.pick(endpoints));
    const Int scale = pow3(static_cast<unsigned long>(set.depth() + 2));
    const std::uint64_t range = scale.get_ui() + 1;
    while (static_cast<int>(out.size()) < count) {
        Rat x(Int(static_cast<unsigned long>(gen.below(range))), scale);
        if (set.contains(x)) out.push_back(std::move(x));
    }
    return out;
}

inline std::vector<std::pair<Rat, Rat>> closed_components(const GapList& gaps) {
    std::vector<std::pair<Rat, Rat>> out;
    Rat start(0);
    for (const auto& g : gaps) {
        out.emplace_back(start, g.lo());
        start = g.hi();
    }
    out.emplace_back(start, Rat(1));
    return out;
}

struct ProductBoundRun {
    std::vector<std::pair<Rat, Rat>> pairs;
    std::vector<ProductProfile> profiles;
};

inline ProductBoundRun run_product_profiles(const SuiteConfig& cfg) {
    InstanceGenerator gen(cfg.seed + 3);
    TernaryDepthSet a = build_truncation(LevelIndexSpec::quadratic_blocks(), cfg.product_depth);
    TernaryDepthSet b = build_truncation(LevelIndexSpec::complement_blocks(), cfg.product_depth);
    std::vector<Rat> xs = sample_members(a, cfg.product_pairs, gen);
    std::vector<Rat> ys = sample_members(b, cfg.product_pairs, gen);
    std::vector<Rat> grid = geometric_grid(Rat(Int(4), Int(3)), cfg.product_grid_ratio, cfg.product_grid_points);
    ProductBoundRun run;
    for (int k = 0; k < cfg.product_pairs; ++k) {
        run.pairs.emplace_back(xs[static_cast<std::size_t>(k)], ys[static_cast<std::size_t>(k)]);
        run.profiles.push_back(product_profile(lazy_truncation(a.spec(), a.depth()),
                                               lazy_truncation(b.spec(), b.depth()), xs[static_cast<std::size_t>(k)],
                                               ys[static_cast<std::size_t>(k)], grid));
    }
    return run;
}

}  // namespace suite_detail

// Net property, pairwise disjointness and the "inside a coarser gap iff
// finer" rule for boundary sets, level gap length, and agreement of the
// all-levels truncation with the middle-thirds recursion.
inline SuiteReport check_observation(const SuiteConfig& cfg) {
    SuiteReport rep{"observation", cfg.seed, 0, {}};
    const int top = cfg.observation_max_level;
    std::vector<std::vector<Rat>> boundary(static_cast<std::size_t>(top) + 1);
    for (int n = 1; n <= top; ++n) boundary[static_cast<std::size_t>(n)] = boundary_points_in_window(n, Rat(0), Rat(1));

    for (int n = 1; n <= top; ++n) {
        const auto& mn = boundary[static_cast<std::size_t>(n)];
        const std::string lvl = "level " + std::to_string(n);
        Int expected_count = 2 * level_gap_count(n);
        rep.check(Int(static_cast<unsigned long>(mn.size())) == expected_count, lvl + " boundary count",
                  expected_count.get_str(), std::to_string(mn.size()));
        rep.check(epsilon_net_check(mn, inv_pow3(static_cast<unsigned long>(n)), Rat(0), Rat(1)),
                  lvl + " boundary is a 3^-n net of [0,1]", "true", "false");
        Rat len = total_length(level_gaps(n).gaps());
        rep.check(len == Rat(Int(1), Int(3)), lvl + " total gap length", "1/3", len.to_string());

        for (int m = 1; m < n; ++m) {
            const auto& mm = boundary[static_cast<std::size_t>(m)];
            std::vector<Rat> common;
            std::set_intersection(mm.begin(), mm.end(), mn.begin(), mn.end(), std::back_inserter(common));
            rep.check(common.empty(), "boundary sets of levels " + std::to_string(m) + " and " + std::to_string(n),
                      "disjoint", common.empty() ? "disjoint" : "share " + common.front().to_string());
        }
        for (int m = 1; m <= top; ++m) {
            bool hits = std::any_of(mn.begin(), mn.end(), [&](const Rat& p) { return inside_level_gap(p, m); });
            rep.check(hits == (m < n),
                      "level-" + std::to_string(n) + " boundary inside level-" + std::to_string(m) + " gaps",
                      m < n ? "true" : "false", hits ? "true" : "false");
        }
        auto ours = suite_detail::closed_components(build_truncation(LevelIndexSpec::all_levels(), n).gaps());
        auto classical = middle_thirds_intervals(n);
        rep.check(ours == classical, "all-levels truncation at depth " + std::to_string(n) + " vs middle thirds",
                  std::to_string(classical.size()) + " intervals", std::to_string(ours.size()) + " intervals");
    }
    return rep;
}

// Every component endpoint y of the complement-block truncation has a point
// of M_{n0} inside the complement-block set within 2*3^{-n0}, for each
// block level n0 up to the depth.
inline SuiteReport check_density(const SuiteConfig& cfg) {
    SuiteReport rep{"density", cfg.seed, 0, {}};
    const LevelIndexSpec complement = LevelIndexSpec::complement_blocks();
    const TernaryDepthSet set = build_truncation(complement, cfg.density_depth);
    const std::vector<Rat> endpoints = suite_detail::closed_set_endpoints(set.gaps());
    for (int n0 : LevelIndexSpec::quadratic_blocks().levels_up_to(cfg.density_depth)) {
        const Rat radius = Rat(2) * inv_pow3(static_cast<unsigned long>(n0));
        std::size_t misses = 0;
        std::string first_miss;
        for (const auto& y : endpoints) {
            auto near = boundary_points_in_window(n0, y - radius, y + radius);
            // Boundary points of level n0 are never inside finer gaps, so
            // checking levels up to the depth decides membership in the full set.
            bool found = std::any_of(near.begin(), near.end(),
                                     [&](const Rat& z) { return member(complement, cfg.density_depth, z); });
            if (!found && misses++ == 0) first_miss = y.to_string();
            ++rep.instances_run;
        }
        if (misses)
            rep.failures.push_back({"block level " + std::to_string(n0) + ", endpoint " + first_miss,
                                    "boundary point within " + radius.to_string(),
                                    std::to_string(misses) + " endpoints without one"});
    }
    return rep;
}

// delta >= 1/4 on sampled h of every active level window, for block and
// complement-block truncations.
inline SuiteReport check_quarter_bound(const SuiteConfig& cfg) {
    SuiteReport rep{"quarter", cfg.seed, 0, {}};
    InstanceGenerator gen(cfg.seed + 2);
    for (const LevelIndexSpec& spec : {LevelIndexSpec::quadratic_blocks(), LevelIndexSpec::complement_blocks()}) {
        const TernaryDepthSet set = build_truncation(spec, cfg.quarter_depth);
        const TernaryDepthSet lazy = lazy_truncation(spec, cfg.quarter_depth);
        for (const auto& x : suite_detail::sample_members(set, cfg.quarter_points, gen)) {
            for (int n : set.levels()) {
                for (const auto& s : quarter_bound_samples(lazy, x, n, cfg.quarter_samples))
                    rep.check(s.delta >= suite_detail::quarter(),
                              set.to_string() + " x=" + x.to_string() + " level " + std::to_string(n) +
                                  " h=" + s.h.to_string(),
                              ">= 1/4", s.delta.to_string());
            }
        }
    }
    return rep;
}

// delta_product >= 1/4 along a geometric h-grid for sampled pairs.
inline SuiteReport check_product_bound(const SuiteConfig& cfg) {
    SuiteReport rep{"product-bound", cfg.seed, 0, {}};
    auto run = suite_detail::run_product_profiles(cfg);
    for (std::size_t k = 0; k < run.profiles.size(); ++k) {
        const auto& [x, y] = run.pairs[k];
        for (const auto& s : run.profiles[k].combined)
            rep.check(s.delta >= suite_detail::quarter(),
                      "[" + x.to_string() + ";" + y.to_string() + "] h=" + s.h.to_string(), ">= 1/4",
                      s.delta.to_string());
    }
    return rep;
}

// delta_product(d, d) == d on every factor and combined sample of the
// product-bound profiles.
inline SuiteReport check_diagonal(const SuiteConfig& cfg) {
    SuiteReport rep{"diagonal", cfg.seed, 0, {}};
    auto run = suite_detail::run_product_profiles(cfg);
    for (std::size_t k = 0; k < run.profiles.size(); ++k) {
        const auto& p = run.profiles[k];
        for (const auto* samples : {&p.a.samples, &p.b.samples, &p.combined}) {
            for (const auto& s : *samples) {
                Rat d = delta_product(s.delta, s.delta);
                rep.check(d == s.delta, "pair " + std::to_string(k) + " h=" + s.h.to_string(), s.delta.to_string(),
                          d.to_string());
            }
        }
    }
    return rep;
}

// exact >= 1D oracle >= exact - 2*step.
inline SuiteReport check_oracle_1d(const SuiteConfig& cfg) {
    SuiteReport rep{"oracle-1d", cfg.seed, 0, {}};
    InstanceGenerator gen(cfg.seed + 4);
    const Rat& step = cfg.oracle.grid_step;
    for (int k = 0; k < cfg.oracle_1d_instances; ++k) {
        LevelIndexSpec spec = gen.random_subset_spec(6);
        const int depth = cfg.oracle.depth;
        Rat x = gen.pick(component_endpoints_by_membership(spec, depth));
        Rat h = gen.random_radius(1, 6);
        Rat exact = gamma(lazy_truncation(spec, depth), x, h).value;
        Rat approx = gamma_oracle_1d(spec, depth, x, h, step);
        bool ok = exact >= approx && approx >= exact - Rat(2) * step;
        rep.check(ok, suite_detail::levels_text(spec, depth) + " x=" + x.to_string() + " h=" + h.to_string(),
                  "within [" + Rat(exact - Rat(2) * step).to_string() + ", " + exact.to_string() + "]",
                  approx.to_string());
    }
    return rep;
}

// max of the exact factor gammas against the 2D max-metric oracle.
inline SuiteReport check_product_identity(const SuiteConfig& cfg) {
    SuiteReport rep{"product-identity", cfg.seed, 0, {}};
    InstanceGenerator gen(cfg.seed + 5);
    const Rat& step = cfg.oracle.grid_step;
    const int depth = cfg.oracle.depth;
    for (int k = 0; k < cfg.oracle_2d_instances; ++k) {
        LevelIndexSpec sa = gen.random_subset_spec(6);
        LevelIndexSpec sb = gen.random_subset_spec(6);
        Rat x = gen.pick(component_endpoints_by_membership(sa, depth));
        Rat y = gen.pick(component_endpoints_by_membership(sb, depth));
        Rat h = gen.random_radius(2, 6);
        Rat exact = gamma_product(gamma(lazy_truncation(sa, depth), x, h).value,
                                  gamma(lazy_truncation(sb, depth), y, h).value);
        Rat approx = gamma_oracle_2d(sa, sb, depth, depth, x, y, h, step);
        rep.check(abs(exact - approx) <= Rat(2) * step,
                  suite_detail::levels_text(sa, depth) + " x " + suite_detail::levels_text(sb, depth) + " at [" +
                      x.to_string() + ";" + y.to_string() + "] h=" + h.to_string(),
                  exact.to_string(), approx.to_string());
    }
    return rep;
}

// Scale equality at the distinguished radii plus the distance identities it
// rests on. Combinations failing the i^2 > n0 precondition are skipped.
inline SuiteReport check_theorem(const SuiteConfig& cfg) {
    SuiteReport rep{"theorem", cfg.seed, 0, {}};
    const LevelIndexSpec complement = LevelIndexSpec::complement_blocks();
    for (const auto& x : cfg.theorem_points) {
        // x = k / 3^{n0}, k not divisible by 3
        int n0 = 0;
        for (int n = 1; n <= 40 && n0 == 0; ++n)
            if ((x * Rat(pow3(static_cast<unsigned long>(n)))).is_integer()) n0 = n;
        const std::string at = "x=" + x.to_string();
        if (n0 == 0) {
            rep.check(false, at, "triadic point", "not triadic");
            continue;
        }
        for (int i : cfg.theorem_indices) {
            if (static_cast<long>(i) * i <= n0) continue;
            const std::string inst = at + " i=" + std::to_string(i);
            TheoremScaleCheck t;
            try {
                t = theorem_scale_equality(x, n0, i);
            } catch (const TheoremPreconditionError& e) {
                rep.check(false, inst, "preconditions hold", e.what());
                continue;
            }
            rep.check(t.equal, inst + " delta at h=" + t.h.to_string(), t.expected.to_string(), t.delta.to_string());

            const int depth = i * i + i + 2;
            for (int j = n0 + 1; j <= depth; ++j) {
                Rat d = dist_to_level_gaps(x, j);
                Rat want = inv_pow3(static_cast<unsigned long>(j));
                rep.check(d == want, inst + " dist to level " + std::to_string(j), want.to_string(), d.to_string());
            }
            for (int j = 1; j < n0; ++j) {
                if (!complement.contains(j)) continue;
                Rat d = dist_to_level_gaps(x, j);
                Rat floor_value = inv_pow3(static_cast<unsigned long>(n0));
                rep.check(d >= floor_value, inst + " dist to level " + std::to_string(j),
                          ">= " + floor_value.to_string(), d.to_string());
            }
            Rat d = dist_to_levels(x, complement.levels_up_to(i * i - 1));
            Rat want = inv_pow3(static_cast<unsigned long>(i * i - 1));
            rep.check(d == want, inst + " dist to complement levels <= " + std::to_string(i * i - 1),
                      want.to_string(), d.to_string());
        }
    }
    return rep;
}

// Once gamma_N >= 3^{-(N+1)}, the next three depths give the same value.
inline SuiteReport check_stabilization(const SuiteConfig& cfg) {
    SuiteReport rep{"stabilization", cfg.seed, 0, {}};
    InstanceGenerator gen(cfg.seed + 6);
    for (int k = 0; k < cfg.stabilization_instances; ++k) {
        LevelIndexSpec spec = [&] {
            switch (gen.below(4)) {
                case 0: return LevelIndexSpec::quadratic_blocks();
                case 1: return LevelIndexSpec::complement_blocks();
                case 2: return LevelIndexSpec::all_levels();
                default: return gen.random_subset_spec(12);
            }
        }();
        Rat x = gen.pick(component_endpoints_by_membership(spec, 6));
        Rat h = gen.random_radius(1, 8);
        const std::string inst = spec.to_string() + " x=" + x.to_string() + " h=" + h.to_string();
        int stable_at = 0;
        Rat value;
        for (int n = 1; n <= cfg.stabilization_depth_cap; ++n) {
            value = gamma(lazy_truncation(spec, n), x, h).value;
            if (value >= inv_pow3(static_cast<unsigned long>(n + 1))) {
                stable_at = n;
                break;
            }
        }
        if (stable_at == 0) {
            rep.check(false, inst, "criterion met by depth " + std::to_string(cfg.stabilization_depth_cap),
                      "never met");
            continue;
        }
        for (int extra = 1; extra <= 3; ++extra) {
            Rat deeper = gamma(lazy_truncation(spec, stable_at + extra), x, h).value;
            rep.check(deeper == value, inst + " depth " + std::to_string(stable_at) + "+" + std::to_string(extra),
                      value.to_string(), deeper.to_string());
        }
    }
    return rep;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"observation", "density",       "quarter", "product",
                                                "theorem",     "stabilization", "diagonal"};
    return names;
}

// "quarter" also covers the product lower bound; "product" pairs the 1D and
// 2D oracle comparisons.
inline SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    auto combine = [&](std::initializer_list<SuiteReport> parts) {
        SuiteReport rep{name, cfg.seed, 0, {}};
        for (const auto& p : parts) rep.absorb(p);
        return rep;
    };
    if (name == "observation") return check_observation(cfg);
    if (name == "density") return check_density(cfg);
    if (name == "quarter") return combine({check_quarter_bound(cfg), check_product_bound(cfg)});
    if (name == "product") return combine({check_oracle_1d(cfg), check_product_identity(cfg)});
    if (name == "theorem") return check_theorem(cfg);
    if (name == "stabilization") return check_stabilization(cfg);
    if (name == "diagonal") return check_diagonal(cfg);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace porosity

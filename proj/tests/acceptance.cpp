// Acceptance suite: one line per criterion, exit status 0 iff all pass.
//
// Tolerances, instance counts and runtime budgets are fixed here.

#include "porosity/oracles.hpp"
#include "porosity/porosity.hpp"
#include "porosity/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

using namespace porosity;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

Outcome from_report(const SuiteReport& rep) {
    std::string d = std::to_string(rep.instances_run) + " checks";
    if (!rep.passed()) {
        const auto& f = rep.failures.front();
        d += ", " + std::to_string(rep.failures.size()) + " failed; first: " + f.instance + " expected " +
             f.expected + " got " + f.actual;
    }
    return {rep.passed() && rep.instances_run > 0, d};
}

SuiteConfig acceptance_config() {
    SuiteConfig cfg;
    cfg.seed = 20240601;
    cfg.oracle.grid_step = inv_pow3(9);
    cfg.oracle.depth = 6;
    cfg.observation_max_level = 8;
    cfg.density_depth = 10;
    cfg.quarter_depth = 10;
    cfg.quarter_points = 50;
    cfg.quarter_samples = 25;
    cfg.product_depth = 11;
    cfg.product_pairs = 20;
    cfg.product_grid_points = 60;
    cfg.product_grid_ratio = Rat(Int(5), Int(6));
    cfg.oracle_1d_instances = 100;
    cfg.oracle_2d_instances = 20;
    cfg.stabilization_instances = 100;
    cfg.theorem_indices = {2, 3, 4};
    cfg.theorem_points = {Rat(Int(1), Int(3)), Rat(Int(2), Int(3)), Rat(Int(1), Int(81))};
    return cfg;
}

// delta at h = 3^{-(i^2-1)} for the three points; 1/81 needs i >= 3.
Outcome theorem_scale(const SuiteConfig& cfg) {
    struct Case {
        Rat x;
        int n0;
    };
    std::vector<Case> cases{{Rat(Int(1), Int(3)), 1}, {Rat(Int(2), Int(3)), 1}, {Rat(Int(1), Int(81)), 4}};
    int equalities = 0;
    for (const auto& c : cases) {
        for (int i : cfg.theorem_indices) {
            if (static_cast<long>(i) * i <= c.n0) continue;
            TheoremScaleCheck t = theorem_scale_equality(c.x, c.n0, i);
            if (t.gamma.depth_used != i * i + i + 2)
                return {false, "wrong depth for x=" + c.x.to_string() + " i=" + std::to_string(i)};
            if (!t.equal)
                return {false, "x=" + c.x.to_string() + " i=" + std::to_string(i) + ": delta " + t.delta.to_string() +
                                   " != " + t.expected.to_string()};
            ++equalities;
        }
    }
    return {equalities == 8, std::to_string(equalities) + " exact equalities"};
}

Outcome product_bound_with_count(const SuiteConfig& cfg) {
    const Rat lowest = Rat(4) * inv_pow3(11);
    std::vector<Rat> grid = geometric_grid(Rat(Int(4), Int(3)), cfg.product_grid_ratio, cfg.product_grid_points);
    if (!(grid.back() > lowest) || grid.size() != 60u) return {false, "h grid does not span (4*3^-11, 4/3]"};
    SuiteReport rep = check_product_bound(cfg);
    Outcome o = from_report(rep);
    if (rep.instances_run != static_cast<std::size_t>(cfg.product_pairs * cfg.product_grid_points))
        return {false, "unexpected sample count: " + o.detail};
    return o;
}

Outcome decreasing_delta_at_one_third() {
    std::vector<Rat> want{Rat(Int(1), Int(27)), Rat(Int(1), Int(81)), Rat(Int(1), Int(243))};
    std::vector<Rat> got;
    for (int i = 2; i <= 4; ++i) got.push_back(theorem_scale_equality(Rat(Int(1), Int(3)), 1, i).delta);
    bool strictly = got[0] > got[1] && got[1] > got[2];
    std::string d = got[0].to_string() + ", " + got[1].to_string() + ", " + got[2].to_string();
    return {got == want && strictly, d};
}

}  // namespace

int main() {
    const SuiteConfig cfg = acceptance_config();
    struct Criterion {
        int id;
        const char* name;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "theorem scale equality", 10, [&] { return theorem_scale(cfg); }},
        {2, "quarter bound on level windows", 60, [&] { return from_report(check_quarter_bound(cfg)); }},
        {3, "product lower bound on geometric grid", 60, [&] { return product_bound_with_count(cfg); }},
        {4, "product identity vs 2D oracle", 120, [&] { return from_report(check_product_identity(cfg)); }},
        {5, "1D oracle agreement", 60, [&] { return from_report(check_oracle_1d(cfg)); }},
        {6, "observation suite", 30, [&] { return from_report(check_observation(cfg)); }},
        {7, "density suite", 30, [&] { return from_report(check_density(cfg)); }},
        {8, "depth stabilization", 60, [&] { return from_report(check_stabilization(cfg)); }},
        {9, "diagonal identity", 60, [&] { return from_report(check_diagonal(cfg)); }},
        {10, "decreasing delta at x=1/3", 10, [&] { return decreasing_delta_at_one_third(); }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = secs < c.budget_seconds;
        bool ok = o.ok && in_time;
        if (!ok) ++failed;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, c.budget_seconds);
        std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " (" << o.detail << "; "
                  << timing << (in_time ? "" : ", over budget") << ")\n";
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
    return failed == 0 ? 0 : 1;
}

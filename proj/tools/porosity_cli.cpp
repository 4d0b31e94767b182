// porosity: command-line front end for the exact gap-set engine.
//
// Exit codes: 0 success, 1 suite failure, 2 usage or input error.

#include "porosity/oracles.hpp"
#include "porosity/porosity.hpp"
#include "porosity/rational.hpp"
#include "porosity/set_spec.hpp"
#include "porosity/suites.hpp"
#include "porosity/ternary_sets.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace porosity;
using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Rat rational_arg(const std::string& flag, const std::string& text) {
    try {
        return Rat::parse(text);
    } catch (const std::exception& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

SetSpecExpr set_arg(const std::string& flag, const std::string& text) {
    try {
        return parse_set_spec(text);
    } catch (const SetSpecParseError& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

json gap_json(const OpenInterval& g) { return json::array({g.lo().to_string(), g.hi().to_string()}); }

json gamma_json(const SetSpecExpr& set, const Rat& x, const Rat& h, const GammaResult& g) {
    json j;
    j["set"] = set.to_string();
    j["x"] = x.to_string();
    j["h"] = h.to_string();
    j["value"] = g.value.to_string();
    j["value_dec"] = g.value.to_decimal();
    j["witness_center"] = g.witness_center ? json(g.witness_center->to_string()) : json(nullptr);
    j["depth_used"] = g.depth_used;
    j["stabilized"] = g.stabilized;
    return j;
}

// Writes to --out when given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct GridFlags {
    std::string h_max = "4/3";
    std::string ratio = "1/3";
    int count = 10;

    void attach(CLI::App* cmd) {
        cmd->add_option("--h-max", h_max, "largest radius (exact rational)")->capture_default_str();
        cmd->add_option("--ratio", ratio, "geometric ratio in (0,1)")->capture_default_str();
        cmd->add_option("--count", count, "number of radii")->capture_default_str();
    }

    std::vector<Rat> grid() const {
        Rat top = rational_arg("--h-max", h_max);
        Rat r = rational_arg("--ratio", ratio);
        try {
            return geometric_grid(top, r, count);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
};

int run(int argc, char** argv) {
    CLI::App app{"Exact porosity computations on ternary gap sets"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);

    std::string set_text, set_a_text, set_b_text, x_text, y_text, h_text, eps_text, out_path, suite;
    std::vector<std::string> window;
    int deepen_cap = 0;
    int level = 0;
    std::uint64_t seed = SuiteConfig{}.seed;
    GridFlags grid_flags;

    auto* gaps_cmd = app.add_subcommand("gaps", "print the gap list (optionally restricted to a window) as JSON");
    gaps_cmd->add_option("--set", set_text, "set spec, e.g. coblocks@depth:12")->required();
    gaps_cmd->add_option("--window", window, "open window lo hi")->expected(2);

    auto* gamma_cmd = app.add_subcommand("gamma", "compute gamma(x, h) exactly");
    gamma_cmd->add_option("--set", set_text)->required();
    gamma_cmd->add_option("--x", x_text)->required();
    gamma_cmd->add_option("--h", h_text)->required();
    gamma_cmd->add_option("--deepen", deepen_cap, "deepen from the set depth up to this depth until stabilized");

    auto* profile_cmd = app.add_subcommand("profile", "write the delta profile CSV over a geometric h grid");
    profile_cmd->add_option("--set", set_text)->required();
    profile_cmd->add_option("--x", x_text)->required();
    grid_flags.attach(profile_cmd);
    profile_cmd->add_option("--out", out_path, "CSV output file (default stdout)");

    auto* product_cmd = app.add_subcommand("product-profile", "write the max-metric product delta profile CSV");
    product_cmd->add_option("--set-a", set_a_text)->required();
    product_cmd->add_option("--set-b", set_b_text)->required();
    product_cmd->add_option("--x", x_text)->required();
    product_cmd->add_option("--y", y_text)->required();
    grid_flags.attach(product_cmd);
    product_cmd->add_option("--out", out_path, "CSV output file (default stdout)");

    auto* net_cmd = app.add_subcommand("net-check", "is the level-n boundary set an eps-net of [0,1]?");
    net_cmd->add_option("--level", level)->required()->check(CLI::PositiveNumber);
    net_cmd->add_option("--eps", eps_text)->required();

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite and write its JSON report");
    verify_cmd->add_option("--suite", suite)->required()->check(CLI::IsMember(suite_names()));
    verify_cmd->add_option("--seed", seed)->capture_default_str();
    verify_cmd->add_option("--out", out_path, "JSON output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gaps_cmd->parsed()) {
            SetSpecExpr set = set_arg("--set", set_text);
            TernaryDepthSet t = build_truncation(set.spec, set.depth, materialization_cap_from_env());
            json j;
            j["set"] = set.to_string();
            GapList gaps;
            if (!window.empty()) {
                Rat lo = rational_arg("--window", window[0]), hi = rational_arg("--window", window[1]);
                if (!(lo < hi)) throw UsageError("--window needs lo < hi");
                j["window"] = json::array({lo.to_string(), hi.to_string()});
                gaps = t.gaps_in_window(lo, hi);
            } else {
                if (!t.is_materialized())
                    throw UsageError("set has " + truncation_gap_count(set.spec, set.depth).get_str() +
                                     " gaps, above the materialization cap; pass --window");
                gaps = t.gaps();
            }
            j["gaps"] = json::array();
            for (const auto& g : gaps) j["gaps"].push_back(gap_json(g));
            std::cout << j.dump() << '\n';
            return 0;
        }
        if (gamma_cmd->parsed()) {
            SetSpecExpr set = set_arg("--set", set_text);
            Rat x = rational_arg("--x", x_text), h = rational_arg("--h", h_text);
            if (h.sign() <= 0) throw UsageError("--h must be > 0");
            GammaResult g = deepen_cap > 0 ? gamma_deepening(set.spec, x, h, set.depth, std::max(deepen_cap, set.depth))
                                           : gamma(lazy_truncation(set.spec, set.depth), x, h);
            std::cout << gamma_json(set, x, h, g).dump() << '\n';
            return 0;
        }
        if (profile_cmd->parsed()) {
            SetSpecExpr set = set_arg("--set", set_text);
            Rat x = rational_arg("--x", x_text);
            Profile p = scale_profile(lazy_truncation(set.spec, set.depth), x, grid_flags.grid());
            Output out(out_path);
            write_profile_csv(out.stream(), p.samples);
            return 0;
        }
        if (product_cmd->parsed()) {
            SetSpecExpr a = set_arg("--set-a", set_a_text), b = set_arg("--set-b", set_b_text);
            Rat x = rational_arg("--x", x_text), y = rational_arg("--y", y_text);
            ProductProfile p = product_profile(lazy_truncation(a.spec, a.depth), lazy_truncation(b.spec, b.depth), x,
                                               y, grid_flags.grid());
            Output out(out_path);
            write_profile_csv(out.stream(), p.combined);
            return 0;
        }
        if (net_cmd->parsed()) {
            Rat eps = rational_arg("--eps", eps_text);
            if (eps.sign() < 0) throw UsageError("--eps must be >= 0");
            if (level > 30) throw UsageError("--level above 30 is not enumerable");
            bool ok = epsilon_net_check(boundary_points_in_window(level, Rat(0), Rat(1)), eps, Rat(0), Rat(1));
            std::cout << (ok ? "true" : "false") << '\n';
            return 0;
        }
        if (verify_cmd->parsed()) {
            SuiteConfig cfg;
            cfg.seed = seed;
            SuiteReport rep = run_suite(suite, cfg);
            Output out(out_path);
            out.stream() << rep.to_json().dump(2) << '\n';
            if (!out_path.empty())
                std::cout << suite << ": " << rep.instances_run << " checks, " << rep.failures.size()
                          << " failures\n";
            return rep.passed() ? 0 : 1;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "fatal: " << e.what() << '\n';
        return 2;
    }
}

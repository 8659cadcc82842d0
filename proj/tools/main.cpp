// mls: simulate multistable processes and estimate their time-varying
// stability and localisability indices from sampled paths.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mls/experiment.hpp"
#include "mls/harness.hpp"

namespace {

// Exit codes: 0 success, 2 config error, 3 input error, 4 runtime failure.
int guarded(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const mls::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const mls::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multistable process simulation and index estimation"};
    app.require_subcommand(1);

    int jobs = 1;
    app.add_option("--jobs", jobs, "maximum worker threads")->capture_default_str();

    std::string config_file;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_given = false;

    auto add_common = [&](CLI::App* cmd, bool with_config) {
        cmd->fallthrough();  // let --jobs after the subcommand reach the app
        if (with_config)
            cmd->add_option("--config", config_file, "experiment config file");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed, "64-bit seed")
            ->each([&](const std::string&) { seed_given = true; });
    };

    auto* sim = app.add_subcommand("simulate", "generate sample paths");
    add_common(sim, true);

    auto* est = app.add_subcommand("estimate", "estimate indices from path CSVs");
    std::vector<std::string> inputs;
    est->add_option("input", inputs, "path CSV files")->required();
    add_common(est, true);
    std::string which_str = "both";
    est->add_option("--which", which_str, "h | alpha | both")
        ->capture_default_str();
    long n_window_alpha = 0, n_window_h = 0, n_window = 0;
    int t0_count = 0;
    std::string t0_span;
    std::string boundary;
    est->add_option("--n-window", n_window, "window for both estimators");
    est->add_option("--n-window-alpha", n_window_alpha, "alpha window override");
    est->add_option("--n-window-h", n_window_h, "H window override");
    est->add_option("--t0-count", t0_count, "points on the t0 grid");
    est->add_option("--t0-span", t0_span, "auto or lo,hi");
    est->add_option("--boundary", boundary, "error | shrink-window");

    auto* rep = app.add_subcommand("reproduce", "run a figure preset end to end");
    std::string figure;
    rep->add_option("figure", figure, "preset name")
        ->required()
        ->check(CLI::IsMember(mls::harness::preset_names()));
    add_common(rep, false);
    bool full = false;
    rep->add_flag("--full", full, "full-scale resolution for large presets");

    auto* ana = app.add_subcommand("analyze", "preprocess + estimate a raw series");
    std::string raw_input;
    ana->add_option("input", raw_input, "raw series CSV")->required();
    add_common(ana, false);
    long ana_window = 0;
    ana->add_option("--n-window", ana_window,
                    "window size (default: len/40, rounded to even)");

    CLI11_PARSE(app, argc, argv);

    if (sim->parsed()) {
        return guarded([&] {
            if (config_file.empty())
                throw mls::ConfigError("simulate requires --config");
            mls::ExperimentSpec spec = mls::ExperimentSpec::parse_file(config_file);
            if (seed_given) {
                spec.seed = seed;
                spec.seed_set = true;
            }
            if (!out_dir.empty()) spec.out_dir = out_dir;
            spec.validate();
            mls::harness::cmd_simulate(spec, jobs);
            return 0;
        });
    }
    if (est->parsed()) {
        return guarded([&] {
            mls::ExperimentSpec spec;
            if (!config_file.empty())
                spec = mls::ExperimentSpec::parse_file(config_file);
            else {
                spec.generator = "external-csv";
                spec.seed_set = true;
            }
            if (!out_dir.empty()) spec.out_dir = out_dir;
            if (n_window > 0) {
                spec.n_window_alpha = n_window;
                spec.n_window_h = n_window;
            }
            if (n_window_alpha > 0) spec.n_window_alpha = n_window_alpha;
            if (n_window_h > 0) spec.n_window_h = n_window_h;
            if (t0_count > 0) spec.t0_count = t0_count;
            if (!t0_span.empty()) spec.t0_span = t0_span;
            if (!boundary.empty()) spec.boundary = boundary;
            spec.validate();
            mls::Which which = mls::Which::Both;
            if (which_str == "h")
                which = mls::Which::H;
            else if (which_str == "alpha")
                which = mls::Which::Alpha;
            else if (which_str != "both")
                throw mls::ConfigError("--which must be h, alpha or both");
            return mls::harness::cmd_estimate(inputs, spec, which, jobs);
        });
    }
    if (rep->parsed()) {
        return guarded([&] {
            const std::uint64_t s = seed_given ? seed : 1;
            const std::string out = out_dir.empty() ? figure : out_dir;
            return mls::harness::cmd_reproduce(figure, out, s, full, jobs);
        });
    }
    if (ana->parsed()) {
        return guarded([&] {
            const std::string out = out_dir.empty() ? "." : out_dir;
            return mls::harness::cmd_analyze(raw_input, out, ana_window, jobs);
        });
    }
    return 0;
}

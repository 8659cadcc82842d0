#include "mls/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "mls/io.hpp"
#include "mls/processes.hpp"
#include "mls/rng.hpp"
#include "mls/stats.hpp"

namespace mls::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kSchemaVersion = 1;

std::string stem_of(const std::string& file) {
    return fs::path(file).stem().string();
}

json spec_sidecar(const ExperimentSpec& spec) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["tool"] = "mls";
    j["version"] = kVersion;
    j["generator"] = spec.generator;
    j["N"] = spec.N;
    j["n_terms"] = spec.n_terms;
    j["seed"] = spec.seed;
    j["replications"] = spec.replications;
    j["alpha"] = spec.alpha_spec.describe();
    j["h"] = spec.h_spec.describe();
    j["estimator"] = {{"n_window_alpha", spec.n_window_alpha},
                      {"n_window_h", spec.n_window_h},
                      {"p0", spec.p0},
                      {"gamma", spec.gamma},
                      {"p_count", spec.p_count},
                      {"alpha_step", spec.alpha_step},
                      {"boundary", spec.boundary},
                      {"t0_count", spec.t0_count},
                      {"t0_span", spec.t0_span}};
    j["config_hash"] = spec.config_hash();
    return j;
}

void write_json(const std::string& file, const json& j) {
    io::write_text_atomic(file, j.dump(2) + "\n");
}

void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    const std::size_t nthreads = std::min<std::size_t>(
        static_cast<std::size_t>(jobs), count);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    for (auto& th : pool) th.join();
}

}  // namespace

SamplePath simulate_one(const ExperimentSpec& spec, long replication) {
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(replication),
                        kGenerator));
    SamplePath path;
    if (spec.generator == "levy-increments") {
        path = levy_multistable_increments(spec.alpha_spec.build(), spec.N, rng);
    } else if (spec.generator == "levy-fkl") {
        path = levy_multistable_fkl(spec.alpha_spec.build(), spec.N, spec.n_terms,
                                    rng);
    } else if (spec.generator == "lmmm") {
        path = lmmm(spec.alpha_spec.build(), spec.h_spec.build(), spec.N,
                    spec.n_terms, rng);
    } else {
        throw ConfigError("generator cannot be simulated: " + spec.generator);
    }
    path.meta["seed"] = std::to_string(spec.seed);
    path.meta["replication"] = std::to_string(replication);
    path.meta["alpha"] = spec.alpha_spec.describe();
    if (spec.h_spec.present) path.meta["h"] = spec.h_spec.describe();
    path.meta["config_hash"] = std::to_string(spec.config_hash());
    return path;
}

std::vector<std::string> cmd_simulate(const ExperimentSpec& spec, int jobs) {
    spec.validate();
    if (spec.generator == "external-csv")
        throw ConfigError("simulate: generator external-csv has nothing to simulate");
    fs::create_directories(spec.out_dir);
    std::vector<std::string> files(static_cast<std::size_t>(spec.replications));
    parallel_for(files.size(), jobs, [&](std::size_t r) {
        const SamplePath path = simulate_one(spec, static_cast<long>(r));
        const std::string base =
            (fs::path(spec.out_dir) / ("path_r" + std::to_string(r))).string();
        io::write_path_csv(path, base + ".csv");
        json j = spec_sidecar(spec);
        j["replication"] = r;
        j["derived_seed"] = derive_seed(spec.seed, r, kGenerator);
        write_json(base + ".json", j);
        files[r] = base + ".csv";
    });
    return files;
}

std::vector<double> build_t0_grid(const ExperimentSpec& spec,
                                  const SamplePath& path) {
    double lo, hi;
    if (spec.t0_span == "auto") {
        const long n_max = std::max(spec.n_window_alpha, spec.n_window_h);
        const double margin = static_cast<double>(n_max) /
                              (2.0 * static_cast<double>(path.resolution));
        lo = path.t_start + margin;
        hi = path.t_end - margin;
    } else {
        const auto comma = spec.t0_span.find(',');
        if (comma == std::string::npos)
            throw ConfigError("t0_span must be `auto` or `lo,hi`");
        lo = std::stod(spec.t0_span.substr(0, comma));
        hi = std::stod(spec.t0_span.substr(comma + 1));
    }
    if (!(lo <= hi))
        throw ConfigError("empty t0 span; window too large for the path");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(spec.t0_count));
    if (spec.t0_count == 1) {
        grid.push_back(0.5 * (lo + hi));
        return grid;
    }
    for (int i = 0; i < spec.t0_count; ++i)
        grid.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                static_cast<double>(spec.t0_count - 1));
    return grid;
}

EstimateSeries estimate_path(const SamplePath& path, const ExperimentSpec& spec,
                             Which which, int jobs) {
    const auto grid = build_t0_grid(spec, path);
    EstimateSeries merged;
    merged.t0_values = grid;
    merged.h_hat.assign(grid.size(), std::nan(""));
    merged.alpha_hat.assign(grid.size(), std::nan(""));
    merged.status.assign(grid.size(), "ok");

    if (which == Which::Alpha || which == Which::Both) {
        const auto cfg = spec.estimator_config(spec.n_window_alpha);
        const EstimateSeries s = sweep(path, grid, cfg, Which::Alpha, jobs);
        merged.alpha_hat = s.alpha_hat;
        merged.status = s.status;
        merged.config = cfg;
    }
    if (which == Which::H || which == Which::Both) {
        const auto cfg = spec.estimator_config(spec.n_window_h);
        const EstimateSeries s = sweep(path, grid, cfg, Which::H, jobs);
        merged.h_hat = s.h_hat;
        if (which == Which::H) {
            merged.status = s.status;
            merged.config = cfg;
        } else {
            for (std::size_t i = 0; i < grid.size(); ++i)
                if (merged.status[i] == "ok" && s.status[i] != "ok")
                    merged.status[i] = s.status[i];
        }
    }
    merged.meta["config_hash"] = std::to_string(spec.config_hash());
    return merged;
}

int cmd_estimate(const std::vector<std::string>& inputs,
                 const ExperimentSpec& spec, Which which, int jobs) {
    if (inputs.empty()) throw InputError("estimate: no input files");
    fs::create_directories(spec.out_dir);
    bool any_ok = false;
    for (const auto& input : inputs) {
        SamplePath path;
        try {
            path = io::read_path_csv(input);
        } catch (const std::exception& e) {
            throw InputError(e.what());
        }
        const EstimateSeries series = estimate_path(path, spec, which, jobs);
        const std::string base =
            (fs::path(spec.out_dir) / (stem_of(input) + ".estimates")).string();
        io::write_series_csv(series, base + ".csv");
        json j = spec_sidecar(spec);
        j["input"] = input;
        write_json(base + ".json", j);
        any_ok = any_ok || std::any_of(series.status.begin(), series.status.end(),
                                       [](const std::string& s) { return s == "ok"; });
    }
    return any_ok ? 0 : 4;
}

std::vector<std::string> preset_names() {
    return {"fig1-row1", "fig1-row2", "fig1-row3", "fig2",
            "fig3",      "fig4-row1", "fig4-row2", "fig4-row3",
            "fig4-row4"};
}

ExperimentSpec make_preset(const std::string& figure, bool full,
                           std::uint64_t seed, const std::string& out_dir) {
    ExperimentSpec spec;
    spec.seed = seed;
    spec.seed_set = true;
    spec.out_dir = out_dir;
    spec.N = 20000;
    spec.n_window_alpha = 2042;
    spec.n_window_h = 500;
    spec.t0_count = 161;

    auto affine = [](double a, double b) {
        IndexFunctionSpec s;
        s.present = true;
        s.form = "affine";
        s.a = a;
        s.b = b;
        return s;
    };
    auto sinus = [](double a, double b) {
        IndexFunctionSpec s;
        s.present = true;
        s.form = "sinusoidal";
        s.a = a;
        s.b = b;
        return s;
    };
    auto logistic = [](double a, double b, double c, double d) {
        IndexFunctionSpec s;
        s.present = true;
        s.form = "logistic";
        s.a = a;
        s.b = b;
        s.c = c;
        s.d = d;
        return s;
    };

    if (figure == "fig1-row1") {
        spec.generator = "levy-increments";
        spec.alpha_spec = affine(1.98, -0.96);
    } else if (figure == "fig1-row2") {
        spec.generator = "levy-increments";
        spec.alpha_spec = logistic(1.98, -0.96, 20.0, -40.0);
    } else if (figure == "fig1-row3") {
        spec.generator = "levy-increments";
        spec.alpha_spec = sinus(1.5, -0.48);
    } else if (figure == "fig2") {
        spec.generator = "levy-increments";
        spec.alpha_spec = sinus(1.5, 0.48);
    } else if (figure == "fig3") {
        spec.generator = "levy-increments";
        spec.alpha_spec = sinus(1.5, 0.48);
        spec.N = full ? 200000 : 50000;
        spec.n_window_alpha = 3546;
    } else if (figure == "fig4-row1") {
        spec.generator = "lmmm";
        spec.alpha_spec = affine(1.41, 0.57);
        spec.h_spec = sinus(0.725, 0.175);
        spec.n_window_alpha = 3000;
    } else if (figure == "fig4-row2") {
        spec.generator = "lmmm";
        spec.alpha_spec = sinus(1.695, 0.235);
        spec.h_spec = sinus(0.725, -0.175);
        spec.n_window_alpha = 3000;
    } else if (figure == "fig4-row3") {
        spec.generator = "lmmm";
        spec.alpha_spec = sinus(1.695, 0.235);
        spec.h_spec = affine(0.59, 0.31);
        spec.n_window_alpha = 3000;
    } else if (figure == "fig4-row4") {
        spec.generator = "lmmm";
        spec.alpha_spec = logistic(1.41, 0.47, 20.0, -40.0);
        spec.h_spec = affine(0.9, -0.35);
        spec.n_window_alpha = 3000;
    } else {
        throw ConfigError("unknown figure preset: " + figure);
    }
    spec.validate();
    return spec;
}

int cmd_reproduce(const std::string& figure, const std::string& out_dir,
                  std::uint64_t seed, bool full, int jobs) {
    const auto t_begin = std::chrono::steady_clock::now();
    const ExperimentSpec spec = make_preset(figure, full, seed, out_dir);
    fs::create_directories(out_dir);

    const SamplePath path = simulate_one(spec, 0);
    io::write_path_csv(path, (fs::path(out_dir) / "path_r0.csv").string());

    const EstimateSeries series = estimate_path(path, spec, Which::Both, jobs);
    io::write_series_csv(series, (fs::path(out_dir) / "estimates.csv").string());

    // Metrics against the true curves, restricted to t in [0.1, 0.9].
    const IndexFunction alpha_true = spec.alpha_spec.build();
    const bool levy = spec.generator != "lmmm";
    std::vector<double> a_hat, a_tru, h_hat, h_tru, prod_dev;
    for (std::size_t i = 0; i < series.t0_values.size(); ++i) {
        const double t0 = series.t0_values[i];
        if (t0 < 0.1 || t0 > 0.9 || series.status[i] != "ok") continue;
        const double at = alpha_true(t0);
        const double ht = levy ? 1.0 / at : spec.h_spec.build()(t0);
        if (std::isfinite(series.alpha_hat[i])) {
            a_hat.push_back(series.alpha_hat[i]);
            a_tru.push_back(at);
        }
        if (std::isfinite(series.h_hat[i])) {
            h_hat.push_back(series.h_hat[i]);
            h_tru.push_back(ht);
        }
        if (std::isfinite(series.alpha_hat[i]) && std::isfinite(series.h_hat[i]))
            prod_dev.push_back(std::abs(series.alpha_hat[i] * series.h_hat[i] - 1.0));
    }
    auto mae = [](const std::vector<double>& est, const std::vector<double>& tru) {
        double s = 0.0;
        for (std::size_t i = 0; i < est.size(); ++i) s += std::abs(est[i] - tru[i]);
        return est.empty() ? std::nan("") : s / static_cast<double>(est.size());
    };

    json report = spec_sidecar(spec);
    report["figure"] = figure;
    report["full_scale"] = full;
    report["clipped_t0_span"] = {series.t0_values.front(), series.t0_values.back()};
    json metrics;
    metrics["alpha_corr"] =
        a_hat.size() >= 2 ? stats::pearson(a_hat, a_tru) : std::nan("");
    metrics["alpha_mae"] = mae(a_hat, a_tru);
    metrics["h_mae"] = mae(h_hat, h_tru);
    metrics["product_mean_abs_dev"] =
        prod_dev.empty() ? std::nan("")
                         : std::accumulate(prod_dev.begin(), prod_dev.end(), 0.0) /
                               static_cast<double>(prod_dev.size());
    metrics["points_used"] = a_hat.size();
    report["metrics"] = metrics;
    const auto t_end = std::chrono::steady_clock::now();
    report["timing_s"] =
        std::chrono::duration<double>(t_end - t_begin).count();
    write_json((fs::path(out_dir) / "report.json").string(), report);
    return 0;
}

int cmd_analyze(const std::string& input, const std::string& out_dir,
                long n_window, int jobs) {
    std::vector<double> raw;
    try {
        raw = io::read_raw_csv(input);
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
    if (n_window <= 0) {
        n_window = static_cast<long>(raw.size()) / 40;
        n_window -= n_window % 2;
    }
    if (n_window < 2) throw InputError("analyze: input too short for a window");
    if (static_cast<long>(raw.size()) < 4 * n_window)
        throw InputError("analyze: input shorter than 4 * n_window");

    const SamplePath path = cumulative_demean(raw);
    ExperimentSpec spec;
    spec.generator = "external-csv";
    spec.seed_set = true;  // no randomness in analysis
    spec.seed = 0;
    spec.out_dir = out_dir;
    spec.n_window_alpha = n_window;
    spec.n_window_h = n_window;
    spec.validate();

    fs::create_directories(out_dir);
    const EstimateSeries series = estimate_path(path, spec, Which::Both, jobs);
    const std::string base =
        (fs::path(out_dir) / (stem_of(input) + ".analysis")).string();
    io::write_series_csv(series, base + ".csv");
    json j = spec_sidecar(spec);
    j["input"] = input;
    j["n_window"] = n_window;
    write_json(base + ".json", j);
    const bool any_ok =
        std::any_of(series.status.begin(), series.status.end(),
                    [](const std::string& s) { return s == "ok"; });
    return any_ok ? 0 : 4;
}

}  // namespace mls::harness

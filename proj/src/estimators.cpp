#include "mls/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "mls/simd/kernels.hpp"
#include "mls/stable.hpp"

namespace mls {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

EstimatorConfig EstimatorConfig::defaults(long n_window) {
    EstimatorConfig cfg;
    cfg.n_window = n_window;
    cfg.p_grid.reserve(61);
    for (int i = 0; i < 61; ++i)
        cfg.p_grid.push_back(cfg.p0 + (2.0 - cfg.p0) * static_cast<double>(i) / 60.0);
    cfg.p_grid.back() = 2.0;
    cfg.alpha_grid.reserve(401);
    for (int i = 0; i <= 400; ++i)
        cfg.alpha_grid.push_back(static_cast<double>(i) * 0.005);
    cfg.alpha_grid.back() = 2.0;
    cfg.validate();
    return cfg;
}

void EstimatorConfig::validate() const {
    if (n_window <= 0 || n_window % 2 != 0)
        throw std::invalid_argument("EstimatorConfig: n_window must be even and positive");
    if (!(p0 > 0.0)) throw std::invalid_argument("EstimatorConfig: p0 must be > 0");
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("EstimatorConfig: gamma must lie in (0,1)");
    if (p_grid.size() < 2 || p_grid.front() != p0 || p_grid.back() != 2.0 ||
        !std::is_sorted(p_grid.begin(), p_grid.end()))
        throw std::invalid_argument("EstimatorConfig: p_grid must run from p0 to 2");
    if (alpha_grid.size() < 2 || alpha_grid.front() != 0.0 ||
        alpha_grid.back() != 2.0 || !std::is_sorted(alpha_grid.begin(), alpha_grid.end()))
        throw std::invalid_argument("EstimatorConfig: alpha_grid must cover [0,2]");
}

std::uint64_t EstimatorConfig::grid_hash() const {
    // FNV-1a over the grid bytes and p0.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](const void* data, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 0x100000001b3ULL;
        }
    };
    feed(&p0, sizeof p0);
    feed(p_grid.data(), p_grid.size() * sizeof(double));
    feed(alpha_grid.data(), alpha_grid.size() * sizeof(double));
    return h;
}

Window window_increments(const SamplePath& path, double t0, long n_window,
                         BoundaryPolicy policy) {
    if (n_window <= 0 || n_window % 2 != 0)
        throw std::invalid_argument("window_increments: n_window must be even and positive");
    path.validate();
    if (!(t0 >= path.t_start && t0 <= path.t_end))
        throw WindowError("window_increments: t0 outside the path span");

    const double N = static_cast<double>(path.resolution);
    const long k0 = static_cast<long>(std::floor((t0 - path.t_start) * N));
    const long last_k = static_cast<long>(path.values.size()) - 2;
    long lo = k0 - n_window / 2;
    long hi = k0 + n_window / 2 - 1;
    if (lo < 0 || hi > last_k) {
        if (policy == BoundaryPolicy::Error)
            throw WindowError("window_increments: window leaves the sample range");
        lo = std::max(lo, 0L);
        hi = std::min(hi, last_k);
        if (lo > hi)
            throw WindowError("window_increments: clipped window is empty");
    }

    Window w;
    w.first_k = lo;
    w.requested = n_window;
    w.increments.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long k = lo; k <= hi; ++k)
        w.increments.push_back(path.values[static_cast<std::size_t>(k) + 1] -
                               path.values[static_cast<std::size_t>(k)]);
    return w;
}

HEstimate estimate_h(const SamplePath& path, double t0,
                     const EstimatorConfig& config) {
    const Window w = window_increments(path, t0, config.n_window, config.boundary);
    std::size_t skipped = 0;
    const double sum = kern::active().sum_log_abs(w.increments.data(),
                                                  w.increments.size(), &skipped);
    const std::size_t retained = w.increments.size() - skipped;
    if (retained == 0)
        throw std::runtime_error("estimate_h: all increments in the window are zero");
    HEstimate est;
    est.skipped = skipped;
    est.value = -sum / (static_cast<double>(retained) *
                        std::log2(static_cast<double>(path.resolution)));
    return est;
}

double empirical_moment(const std::vector<double>& increments, double p) {
    if (increments.empty())
        throw std::invalid_argument("empirical_moment: empty window");
    if (!(p > 0.0)) throw std::invalid_argument("empirical_moment: p must be > 0");
    const double s =
        kern::active().sum_abs_pow(increments.data(), increments.size(), p);
    return std::pow(s / static_cast<double>(increments.size()), 1.0 / p);
}

std::vector<double> ratio_curve(const std::vector<double>& increments,
                                const EstimatorConfig& config) {
    if (increments.empty())
        throw std::invalid_argument("ratio_curve: empty window");
    if (std::all_of(increments.begin(), increments.end(),
                    [](double x) { return x == 0.0; }))
        throw std::runtime_error("ratio_curve: all increments are zero");
    const double s0 = empirical_moment(increments, config.p0);
    std::vector<double> out;
    out.reserve(config.p_grid.size());
    for (double p : config.p_grid)
        out.push_back(s0 / empirical_moment(increments, p));
    return out;
}

namespace {

// Theoretical ratio values R_alpha(p) tabulated over the config grids,
// shared across every alpha estimate with the same grids.
struct RatioTable {
    std::vector<std::vector<double>> r;  // [alpha index][p index]
};

std::shared_ptr<const RatioTable> ratio_table(const EstimatorConfig& cfg) {
    static std::unordered_map<std::uint64_t, std::shared_ptr<const RatioTable>> cache;
    static std::mutex mtx;
    const std::uint64_t key = cfg.grid_hash();
    {
        std::lock_guard lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto table = std::make_shared<RatioTable>();
    table->r.resize(cfg.alpha_grid.size());
    for (std::size_t a = 0; a < cfg.alpha_grid.size(); ++a) {
        auto& row = table->r[a];
        row.reserve(cfg.p_grid.size());
        for (double p : cfg.p_grid)
            row.push_back(
                theoretical_ratio(cfg.alpha_grid[a], MomentRatioSpec(cfg.p0, p)));
    }
    std::lock_guard lock(mtx);
    cache.emplace(key, table);
    return table;
}

double objective_on_row(const std::vector<double>& rexp,
                        const std::vector<double>& row,
                        const EstimatorConfig& cfg) {
    // Composite trapezoid of |R_exp - R_alpha|^gamma over the p grid. The
    // minimizer is invariant to the outer 1/gamma power, so the gamma-power
    // form is integrated directly.
    double acc = 0.0;
    double prev = std::pow(std::abs(rexp[0] - row[0]), cfg.gamma);
    for (std::size_t i = 1; i < rexp.size(); ++i) {
        const double cur = std::pow(std::abs(rexp[i] - row[i]), cfg.gamma);
        acc += 0.5 * (prev + cur) * (cfg.p_grid[i] - cfg.p_grid[i - 1]);
        prev = cur;
    }
    return acc;
}

double objective_continuous(const std::vector<double>& rexp, double alpha,
                            const EstimatorConfig& cfg) {
    double acc = 0.0;
    double prev = std::pow(
        std::abs(rexp[0] - theoretical_ratio(alpha, MomentRatioSpec(cfg.p0,
                                                                    cfg.p_grid[0]))),
        cfg.gamma);
    for (std::size_t i = 1; i < rexp.size(); ++i) {
        const double cur = std::pow(
            std::abs(rexp[i] -
                     theoretical_ratio(alpha, MomentRatioSpec(cfg.p0, cfg.p_grid[i]))),
            cfg.gamma);
        acc += 0.5 * (prev + cur) * (cfg.p_grid[i] - cfg.p_grid[i - 1]);
        prev = cur;
    }
    return acc;
}

}  // namespace

double alpha_objective(const std::vector<double>& rexp,
                       const EstimatorConfig& config, std::size_t alpha_index) {
    const auto table = ratio_table(config);
    return objective_on_row(rexp, table->r.at(alpha_index), config);
}

double estimate_alpha_from_curve(const std::vector<double>& rexp,
                                 const EstimatorConfig& config) {
    if (rexp.size() != config.p_grid.size())
        throw std::invalid_argument("estimate_alpha: ratio curve / p_grid mismatch");
    const auto table = ratio_table(config);
    std::size_t best = 0;
    double best_g = objective_on_row(rexp, table->r[0], config);
    for (std::size_t a = 1; a < config.alpha_grid.size(); ++a) {
        const double g = objective_on_row(rexp, table->r[a], config);
        if (g < best_g) {  // strict: ties keep the smallest alpha
            best_g = g;
            best = a;
        }
    }
    if (!config.refine) return config.alpha_grid[best];

    // One golden-section pass inside the bracketing cell; never leaves it.
    const std::size_t lo_i = best > 0 ? best - 1 : best;
    const std::size_t hi_i =
        best + 1 < config.alpha_grid.size() ? best + 1 : best;
    double a = config.alpha_grid[lo_i];
    double b = config.alpha_grid[hi_i];
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = objective_continuous(rexp, x1, config);
    double f2 = objective_continuous(rexp, x2, config);
    for (int it = 0; it < 40 && (b - a) > 1e-9; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = objective_continuous(rexp, x1, config);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = objective_continuous(rexp, x2, config);
        }
    }
    return 0.5 * (a + b);
}

double estimate_alpha(const SamplePath& path, double t0,
                      const EstimatorConfig& config) {
    const Window w = window_increments(path, t0, config.n_window, config.boundary);
    return estimate_alpha_from_curve(ratio_curve(w.increments, config), config);
}

EstimateSeries sweep(const SamplePath& path, const std::vector<double>& t0_grid,
                     const EstimatorConfig& config, Which which, int jobs) {
    config.validate();
    EstimateSeries out;
    out.config = config;
    out.t0_values = t0_grid;
    out.h_hat.assign(t0_grid.size(), kNaN);
    out.alpha_hat.assign(t0_grid.size(), kNaN);
    out.status.assign(t0_grid.size(), "ok");

    // Build the shared ratio table up front so worker threads only read.
    if (which != Which::H) (void)ratio_table(config);

    auto run_point = [&](std::size_t i) {
        const double t0 = t0_grid[i];
        try {
            if (which == Which::H || which == Which::Both)
                out.h_hat[i] = estimate_h(path, t0, config).value;
            if (which == Which::Alpha || which == Which::Both)
                out.alpha_hat[i] = estimate_alpha(path, t0, config);
        } catch (const WindowError& e) {
            out.status[i] = std::string("window-error: ") + e.what();
        } catch (const std::exception& e) {
            out.status[i] = std::string("error: ") + e.what();
        }
    };

    if (jobs <= 1 || t0_grid.size() < 2) {
        for (std::size_t i = 0; i < t0_grid.size(); ++i) run_point(i);
    } else {
        const std::size_t nthreads =
            std::min<std::size_t>(static_cast<std::size_t>(jobs), t0_grid.size());
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        std::atomic<std::size_t> next{0};
        for (std::size_t t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= t0_grid.size()) return;
                    run_point(i);
                }
            });
        for (auto& th : pool) th.join();
    }
    return out;
}

}  // namespace mls

// Acceptance gate: ten numbered criteria, one [PASS]/[FAIL] line each.
// Run with no argument for the full gate or with a criterion number 1-10.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "mls/estimators.hpp"
#include "mls/experiment.hpp"
#include "mls/harness.hpp"
#include "mls/index_function.hpp"
#include "mls/io.hpp"
#include "mls/processes.hpp"
#include "mls/rng.hpp"
#include "mls/stable.hpp"
#include "mls/stats.hpp"

namespace fs = std::filesystem;
using namespace mls;

namespace {

IndexFunction const_fn(double a) {
    return IndexFunction::constant(a, {a - 1e-9, a + 1e-9});
}

long even_window(long N) {
    long n = static_cast<long>(std::floor(std::pow(static_cast<double>(N), 0.7)));
    n -= n % 2;
    return n;
}

struct Outcome {
    bool pass;
    std::string detail;
};

// ---------------------------------------------------------------- criteria

Outcome crit1_sampler_cf() {
    constexpr std::size_t n = 1000000;
    const double tol = 4.0 / std::sqrt(static_cast<double>(n));
    std::ostringstream detail;
    bool pass = true;
    int idx = 0;
    for (double alpha : {0.6, 1.0, 1.4, 1.8}) {
        Rng rng(derive_seed(101, static_cast<std::uint64_t>(idx++), 0));
        const auto xs = sample_sas(StableParams(alpha), n, rng);
        for (double theta : {0.5, 1.0, 2.0}) {
            double s = 0.0;
            for (double x : xs) s += std::cos(theta * x);
            const double emp = s / static_cast<double>(n);
            const double expect = std::exp(-std::pow(theta, alpha));
            const double err = std::abs(emp - expect);
            if (err > tol) {
                pass = false;
                detail << " alpha=" << alpha << " theta=" << theta
                       << " err=" << err;
            }
        }
    }
    if (pass) detail << "max CF error within " << tol;
    return {pass, detail.str()};
}

Outcome crit2_moment_formula() {
    std::ostringstream detail;
    const double m_cauchy = abs_moment(StableParams(1.0), 0.5).value();
    const bool ok1 = std::abs(m_cauchy - std::sqrt(2.0)) < 1e-4;
    detail << "abs_moment(1,0.5)=" << m_cauchy;

    const double m_quad = abs_moment(StableParams(1.5), 1.0).value();
    constexpr std::size_t n = 10000000;
    // Frozen seed. The sample mean of |Z| has infinite variance at
    // alpha=1.5; its fluctuation is ~n^{-1/3} (about 0.2% here), so the
    // comparison is meaningful but seed-dependent at the band edge.
    Rng rng(203);
    double s = 0.0;
    const StableParams params(1.5);
    for (std::size_t i = 0; i < n; ++i)
        s += std::abs(sample_sas_one(params, rng));
    const double m_mc = s / static_cast<double>(n);
    const double rel = std::abs(m_quad - m_mc) / m_mc;
    const bool ok2 = rel < 0.005;
    detail << "; abs_moment(1.5,1)=" << m_quad << " mc=" << m_mc
           << " rel=" << rel;
    return {ok1 && ok2, detail.str()};
}

Outcome crit3_fkl_vs_cms() {
    constexpr int reps = 2000;
    constexpr long N = 512;
    std::vector<double> fkl_end(reps), inc_end(reps);
    for (int r = 0; r < reps; ++r) {
        Rng ra(derive_seed(303, static_cast<std::uint64_t>(r), 0));
        fkl_end[static_cast<std::size_t>(r)] =
            levy_multistable_fkl(const_fn(1.5), N, 1u << 16, ra).values.back();
        Rng rb(derive_seed(304, static_cast<std::uint64_t>(r), 0));
        inc_end[static_cast<std::size_t>(r)] =
            levy_multistable_increments(const_fn(1.5), N, rb).values.back();
    }
    const auto ks = stats::ks_two_sample(fkl_end, inc_end);
    std::ostringstream detail;
    detail << "KS D=" << ks.statistic << " p=" << ks.p_value;
    return {ks.p_value >= 0.01, detail.str()};
}

Outcome crit4_exact_recovery() {
    const auto cfg = EstimatorConfig::defaults(500);
    std::vector<double> rexp;
    for (double p : cfg.p_grid)
        rexp.push_back(theoretical_ratio(1.3, MomentRatioSpec(cfg.p0, p)));
    const double a_hat = estimate_alpha_from_curve(rexp, cfg);

    // Dyadic resolution keeps the log2-based window sums exact, so the
    // linear path yields H-hat == 1.0 bit-for-bit under any backend.
    SamplePath linear;
    linear.resolution = 4096;
    linear.values.resize(4097);
    for (long k = 0; k <= 4096; ++k)
        linear.values[static_cast<std::size_t>(k)] = static_cast<double>(k) / 4096.0;
    const double h_hat = estimate_h(linear, 0.5, cfg).value;

    std::ostringstream detail;
    detail << "alpha_hat=" << a_hat << " h_hat=" << h_hat;
    return {std::abs(a_hat - 1.3) <= 0.005 + 1e-12 && h_hat == 1.0,
            detail.str()};
}

Outcome crit5_scale_invariance() {
    Rng rng(505);
    const SamplePath base =
        levy_multistable_increments(const_fn(1.5), 20000, rng);
    const auto cfg_a = EstimatorConfig::defaults(2042);
    const auto cfg_h = EstimatorConfig::defaults(500);
    const double a0 = estimate_alpha(base, 0.5, cfg_a);
    const double h0 = estimate_h(base, 0.5, cfg_h).value;
    bool pass = true;
    std::ostringstream detail;
    detail << "alpha_hat=" << a0;
    for (double lambda : {1e-3, 1e3}) {
        SamplePath scaled = base;
        for (double& v : scaled.values) v *= lambda;
        if (estimate_alpha(scaled, 0.5, cfg_a) != a0) {
            pass = false;
            detail << " alpha not scale-invariant at lambda=" << lambda;
        }
        const double expect = h0 - std::log(lambda) / std::log(20000.0);
        const double err = std::abs(estimate_h(scaled, 0.5, cfg_h).value - expect);
        if (err >= 1e-10) {
            pass = false;
            detail << " H shift error " << err << " at lambda=" << lambda;
        }
    }
    return {pass, detail.str()};
}

Outcome crit6_figure1() {
    // Frozen seed. The per-replication correlation is random (pilot over 20
    // seeds: median 0.955, 16/20 above 0.9); seed 2 sits near the median.
    const ExperimentSpec spec = harness::make_preset("fig1-row1", false, 2, ".");
    const SamplePath path = harness::simulate_one(spec, 0);
    const EstimateSeries series =
        harness::estimate_path(path, spec, Which::Both, 4);
    const IndexFunction alpha_true = spec.alpha_spec.build();

    std::vector<double> a_hat, a_tru, prod;
    for (std::size_t i = 0; i < series.t0_values.size(); ++i) {
        const double t0 = series.t0_values[i];
        if (t0 < 0.1 || t0 > 0.9 || series.status[i] != "ok") continue;
        if (std::isfinite(series.alpha_hat[i])) {
            a_hat.push_back(series.alpha_hat[i]);
            a_tru.push_back(alpha_true(t0));
        }
        if (std::isfinite(series.alpha_hat[i]) && std::isfinite(series.h_hat[i]))
            prod.push_back(std::abs(series.alpha_hat[i] * series.h_hat[i] - 1.0));
    }
    const double corr = stats::pearson(a_hat, a_tru);
    const double prod_dev =
        std::accumulate(prod.begin(), prod.end(), 0.0) /
        static_cast<double>(prod.size());
    std::ostringstream detail;
    detail << "corr=" << corr << " mean|a*h-1|=" << prod_dev
           << " points=" << a_hat.size();
    return {corr >= 0.9 && prod_dev <= 0.15, detail.str()};
}

Outcome crit7_consistency_trend() {
    constexpr int reps = 30;
    const std::vector<long> Ns = {2000, 8000, 32000};
    std::vector<double> err_a, err_h;
    for (long N : Ns) {
        const long n = even_window(N);
        const auto cfg = EstimatorConfig::defaults(n);
        double sa = 0.0, sh = 0.0;
        for (int r = 0; r < reps; ++r) {
            Rng rng(derive_seed(707, static_cast<std::uint64_t>(r),
                                static_cast<std::uint64_t>(N)));
            const SamplePath p = levy_multistable_increments(const_fn(1.5), N, rng);
            sa += std::abs(estimate_alpha(p, 0.5, cfg) - 1.5);
            sh += std::abs(estimate_h(p, 0.5, cfg).value - 2.0 / 3.0);
        }
        err_a.push_back(sa / reps);
        err_h.push_back(sh / reps);
    }
    bool pass = true;
    std::ostringstream detail;
    detail << "mean|a-1.5|:";
    for (double e : err_a) detail << " " << e;
    detail << "  mean|H-2/3|:";
    for (double e : err_h) detail << " " << e;
    for (std::size_t i = 1; i < Ns.size(); ++i) {
        if (err_a[i] > 1.10 * err_a[i - 1]) pass = false;
        if (err_h[i] > 1.10 * err_h[i - 1]) pass = false;
    }
    return {pass, detail.str()};
}

Outcome crit8_sn_convergence() {
    constexpr int reps = 30;
    constexpr long N = 32000;
    const double alpha = 1.7, p = 0.5;
    const long n = even_window(N);
    std::vector<double> scaled(reps);
    for (int r = 0; r < reps; ++r) {
        Rng rng(derive_seed(808, static_cast<std::uint64_t>(r), 0));
        const SamplePath path = levy_multistable_increments(const_fn(alpha), N, rng);
        const Window w = window_increments(path, 0.5, n, BoundaryPolicy::Error);
        scaled[static_cast<std::size_t>(r)] =
            std::pow(static_cast<double>(N), 1.0 / alpha) *
            empirical_moment(w.increments, p);
    }
    const double med = stats::median(scaled);
    const double target =
        std::pow(abs_moment(StableParams(alpha), p).value(), 1.0 / p);
    std::ostringstream detail;
    detail << "median=" << med << " target=" << target
           << " rel=" << std::abs(med - target) / target;
    return {std::abs(med - target) / target < 0.10, detail.str()};
}

Outcome crit9_lmmm() {
    std::ostringstream detail;
    // (a) H == 1/alpha: identically zero path.
    Rng rng0(909);
    const double a0 = 1.6;
    const SamplePath zero =
        lmmm(const_fn(a0), const_fn(1.0 / a0), 256, 1024, rng0);
    const bool ok_zero = std::all_of(zero.values.begin(), zero.values.end(),
                                     [](double v) { return v == 0.0; });
    detail << "zero-path=" << (ok_zero ? "yes" : "no");

    // (b) Shell frequencies for j <= 5 over 1e6 draws, 3 sigma.
    const FklMeasure m = lmmm_shell_measure();
    constexpr int draws = 1000000;
    Rng rng1(910);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < draws; ++i) {
        const int shell =
            static_cast<int>(std::floor(std::abs(m.sampler(rng1)))) + 1;
        if (shell <= 6) ++counts[shell];
    }
    bool ok_shell = true;
    constexpr double kPi2 = 9.869604401089358;
    for (int j = 1; j <= 5; ++j) {
        const double p = 6.0 / (kPi2 * j * j) / lmmm_shell_norm();
        const double se = std::sqrt(p * (1.0 - p) / draws);
        const double dev =
            std::abs(counts[j] / static_cast<double>(draws) - p);
        if (dev > 3.0 * se) {
            ok_shell = false;
            detail << " shell " << j << " dev=" << dev << " (3sigma=" << 3 * se
                   << ")";
        }
    }
    detail << " shells=" << (ok_shell ? "ok" : "off");

    // (c) Figure-4 row-1 preset at desk scale: H-curve MAE.
    const ExperimentSpec spec = harness::make_preset("fig4-row1", false, 1, ".");
    const SamplePath path = harness::simulate_one(spec, 0);
    const EstimateSeries series = harness::estimate_path(path, spec, Which::H, 4);
    const IndexFunction h_true = spec.h_spec.build();
    double s = 0.0;
    int cnt = 0;
    for (std::size_t i = 0; i < series.t0_values.size(); ++i) {
        const double t0 = series.t0_values[i];
        if (t0 < 0.1 || t0 > 0.9 || series.status[i] != "ok" ||
            !std::isfinite(series.h_hat[i]))
            continue;
        s += std::abs(series.h_hat[i] - h_true(t0));
        ++cnt;
    }
    const double mae = cnt > 0 ? s / cnt : 1e300;
    detail << " h_mae=" << mae << " points=" << cnt;
    return {ok_zero && ok_shell && mae <= 0.15, detail.str()};
}

Outcome crit10_determinism() {
    const fs::path base =
        fs::temp_directory_path() / "mls_acceptance_determinism";
    std::error_code ec;
    fs::remove_all(base, ec);
    const std::string da = (base / "a").string();
    const std::string db = (base / "b").string();
    harness::cmd_reproduce("fig1-row1", da, 12, false, 1);
    harness::cmd_reproduce("fig1-row1", db, 12, false, 4);
    auto slurp = [](const std::string& f) {
        std::ifstream is(f, std::ios::binary);
        std::ostringstream os;
        os << is.rdbuf();
        return os.str();
    };
    bool pass = true;
    std::ostringstream detail;
    for (const char* name : {"path_r0.csv", "estimates.csv"}) {
        const std::string a = slurp(da + "/" + name);
        const std::string b = slurp(db + "/" + name);
        if (a.empty() || a != b) {
            pass = false;
            detail << " mismatch in " << name;
        }
    }
    if (pass) detail << "CSV outputs byte-identical across --jobs 1 vs 4";
    fs::remove_all(base, ec);
    return {pass, detail.str()};
}

struct Criterion {
    const char* label;
    std::function<Outcome()> run;
};

const Criterion kCriteria[] = {
    {"stable sampler empirical characteristic function", crit1_sampler_cf},
    {"fractional moment formula vs analytic and Monte Carlo", crit2_moment_formula},
    {"series route vs increment route endpoint law (KS)", crit3_fkl_vs_cms},
    {"exact recovery of alpha and H on synthetic inputs", crit4_exact_recovery},
    {"scale invariance of alpha-hat and shift law of H-hat", crit5_scale_invariance},
    {"linear-alpha reproduction: correlation and product", crit6_figure1},
    {"consistency trend along N", crit7_consistency_trend},
    {"scaled empirical moment converges to the stable moment", crit8_sn_convergence},
    {"lmmm: degenerate kernel, shell law, H-curve error", crit9_lmmm},
    {"end-to-end determinism across job counts", crit10_determinism},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > 10) {
            std::fprintf(stderr, "usage: %s [1-10]\n", argv[0]);
            return 2;
        }
    }
    bool all_pass = true;
    for (int k = 1; k <= 10; ++k) {
        if (only != 0 && k != only) continue;
        const auto& c = kCriteria[k - 1];
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        std::printf("[%s] criterion %d: %s (%s; %.1fs)\n",
                    out.pass ? "PASS" : "FAIL", k, c.label, out.detail.c_str(),
                    secs);
        std::fflush(stdout);
        all_pass = all_pass && out.pass;
    }
    return all_pass ? 0 : 1;
}

#include "mls/processes.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mls/simd/kernels.hpp"
#include "mls/stable.hpp"

namespace mls {

namespace {

constexpr double kPi = std::numbers::pi;

void require_levy_alpha(const IndexFunction& alpha_fn) {
    const auto [lo, hi] = alpha_fn.declared_range();
    if (!(lo > 1.0 && hi < 2.0))
        throw std::invalid_argument(
            "levy_multistable: alpha range must be contained in (1,2)");
}

std::vector<double> unit_grid(long N) {
    std::vector<double> grid(static_cast<std::size_t>(N) + 1);
    for (long k = 0; k <= N; ++k)
        grid[static_cast<std::size_t>(k)] =
            static_cast<double>(k) / static_cast<double>(N);
    return grid;
}

struct SortedAtoms {
    std::vector<double> sites, signs, q;  // q = log r - log Gamma
};

SortedAtoms sort_by_site(const FklAtoms& atoms) {
    const std::size_t n = atoms.count();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return atoms.sites[a] < atoms.sites[b];
    });
    SortedAtoms s;
    s.sites.reserve(n);
    s.signs.reserve(n);
    s.q.reserve(n);
    for (std::size_t i : order) {
        s.sites.push_back(atoms.sites[i]);
        s.signs.push_back(atoms.signs[i]);
        s.q.push_back(std::log(atoms.weights[i]) - std::log(atoms.gammas[i]));
    }
    return s;
}

}  // namespace

SamplePath levy_multistable_increments(const IndexFunction& alpha_fn, long N,
                                       Rng& rng) {
    require_levy_alpha(alpha_fn);
    if (N < 2) throw std::invalid_argument("levy_multistable: N must be >= 2");
    SamplePath path;
    path.resolution = N;
    path.t_start = 0.0;
    path.t_end = 1.0;
    path.values.resize(static_cast<std::size_t>(N) + 1);
    path.values[0] = 0.0;
    double y = 0.0;
    for (long k = 0; k < N; ++k) {
        const double u = static_cast<double>(k) / static_cast<double>(N);
        const StableParams params(alpha_fn(u));
        const double scale = std::pow(static_cast<double>(N), -1.0 / params.alpha);
        y += scale * sample_sas_one(params, rng);
        path.values[static_cast<std::size_t>(k) + 1] = y;
    }
    path.meta["generator"] = "levy-increments";
    return path;
}

SamplePath levy_multistable_fkl(const IndexFunction& alpha_fn, long N,
                                std::size_t n_terms, Rng& rng) {
    require_levy_alpha(alpha_fn);
    if (N < 2) throw std::invalid_argument("levy_multistable: N must be >= 2");

    const FklMeasure uniform01{[](Rng& r) { return r.uniform(); },
                               [](double) { return 1.0; }};
    const FklAtoms atoms = generate_atoms(uniform01, n_terms, rng);
    const SortedAtoms sorted = sort_by_site(atoms);

    SamplePath path;
    path.resolution = N;
    path.t_start = 0.0;
    path.t_end = 1.0;
    path.values.resize(static_cast<std::size_t>(N) + 1);

    const auto grid = unit_grid(N);
    const auto& kernels = kern::active();

    if (alpha_fn.is_constant()) {
        const double alpha = alpha_fn(0.0);
        const double inv_alpha = 1.0 / alpha;
        const double pref = std::pow(c_eta_cached(alpha), inv_alpha);
        std::vector<double> prefix(n_terms + 1, 0.0);
        for (std::size_t i = 0; i < n_terms; ++i)
            prefix[i + 1] =
                prefix[i] + sorted.signs[i] * std::exp(inv_alpha * sorted.q[i]);
        std::size_t m = 0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            while (m < n_terms && sorted.sites[m] <= grid[k]) ++m;
            path.values[k] = pref * prefix[m];
        }
    } else {
        std::size_t m = 0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double t = grid[k];
            while (m < n_terms && sorted.sites[m] <= t) ++m;
            const double alpha = alpha_fn(t);
            const double inv_alpha = 1.0 / alpha;
            const double s = kernels.sum_signed_exp(sorted.q.data(),
                                                    sorted.signs.data(), m,
                                                    inv_alpha);
            path.values[k] = std::pow(c_eta_cached(alpha), inv_alpha) * s;
        }
    }
    path.meta["generator"] = "levy-fkl";
    return path;
}

double lmmm_shell_norm() {
    static const double z = [] {
        double s = 0.0;
        for (int j = kLmmmShellMax; j >= 1; --j)
            s += 6.0 / (kPi * kPi * static_cast<double>(j) * static_cast<double>(j));
        return s;
    }();
    return z;
}

FklMeasure lmmm_shell_measure() {
    // Cumulative shell probabilities, built once.
    static const std::vector<double> cdf = [] {
        std::vector<double> c(kLmmmShellMax);
        const double z = lmmm_shell_norm();
        double acc = 0.0;
        for (int j = 1; j <= kLmmmShellMax; ++j) {
            acc += 6.0 / (kPi * kPi * static_cast<double>(j) * static_cast<double>(j)) / z;
            c[static_cast<std::size_t>(j - 1)] = acc;
        }
        c.back() = 1.0;
        return c;
    }();

    FklMeasure m;
    m.sampler = [](Rng& rng) {
        const double u = rng.uniform();
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const int j = static_cast<int>(it - cdf.begin()) + 1;
        const double u2 = rng.uniform();
        // Half-and-half over [-j,-j+1) and [j-1,j).
        if (u2 < 0.5) return -static_cast<double>(j) + 2.0 * u2;
        return static_cast<double>(j) - 1.0 + (2.0 * u2 - 1.0);
    };
    m.weight = [](double x) {
        const double ax = std::abs(x);
        const int j = (x >= 0.0) ? static_cast<int>(std::floor(x)) + 1
                                 : static_cast<int>(std::ceil(ax));
        return kPi * kPi * static_cast<double>(j) * static_cast<double>(j) / 3.0 *
               lmmm_shell_norm();
    };
    return m;
}

SamplePath lmmm(const IndexFunction& alpha_fn, const IndexFunction& h_fn, long N,
                std::size_t n_terms, Rng& rng) {
    if (N < 2) throw std::invalid_argument("lmmm: N must be >= 2");
    {
        const auto [lo, hi] = alpha_fn.declared_range();
        if (!(lo > 0.0 && hi < 2.0))
            throw std::invalid_argument("lmmm: alpha range must lie in (0,2)");
        const auto [hlo, hhi] = h_fn.declared_range();
        if (!(hlo > 0.0 && hhi < 1.0))
            throw std::invalid_argument("lmmm: H range must lie in (0,1)");
    }

    // H - 1/alpha must be nonnegative on the span; identically zero kills
    // the kernel.
    double hmin = 1e300, hmax = -1e300;
    constexpr int kSamples = 10000;
    for (int i = 0; i <= kSamples; ++i) {
        const double t = static_cast<double>(i) / kSamples;
        const double d = h_fn(t) - 1.0 / alpha_fn(t);
        hmin = std::min(hmin, d);
        hmax = std::max(hmax, d);
    }
    if (hmin < -1e-12)
        throw std::invalid_argument("lmmm: H - 1/alpha is negative on the span");

    SamplePath path;
    path.resolution = N;
    path.t_start = 0.0;
    path.t_end = 1.0;
    path.values.assign(static_cast<std::size_t>(N) + 1, 0.0);
    path.meta["generator"] = "lmmm";

    if (hmax < 1e-12) {
        std::cerr << "lmmm: H == 1/alpha on the whole span, kernel vanishes; "
                     "returning the zero path\n";
        path.meta["degenerate"] = "zero-kernel";
        return path;
    }

    const FklAtoms atoms = generate_atoms(lmmm_shell_measure(), n_terms, rng);
    std::vector<double> q(n_terms), logv(n_terms);
    for (std::size_t i = 0; i < n_terms; ++i) {
        q[i] = std::log(atoms.weights[i]) - std::log(atoms.gammas[i]);
        logv[i] = std::log(std::abs(atoms.sites[i]));
    }

    const auto& kernels = kern::active();
    // k = 0 is skipped: |0-x|^h - |x|^h vanishes identically, so Y(0) = 0.
    for (long k = 1; k <= N; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(N);
        const double alpha = alpha_fn(t);
        const double inv_alpha = 1.0 / alpha;
        const double h = std::max(0.0, h_fn(t) - inv_alpha);
        const double s =
            kernels.lfsm_sum(q.data(), atoms.signs.data(), atoms.sites.data(),
                             logv.data(), n_terms, inv_alpha, h, t);
        path.values[static_cast<std::size_t>(k)] =
            std::pow(c_eta_cached(alpha), inv_alpha) * s;
    }
    return path;
}

SamplePath cumulative_demean(const std::vector<double>& raw) {
    if (raw.empty())
        throw std::invalid_argument("cumulative_demean: empty input");
    const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
    const double n = static_cast<double>(raw.size());
    SamplePath path;
    path.resolution = static_cast<long>(raw.size());
    path.t_start = 0.0;
    path.t_end = 1.0;
    path.values.reserve(raw.size() + 1);
    path.values.push_back(0.0);
    // Y(j) = P_j - (j/n) * P_n; the j=n term cancels exactly.
    double acc = 0.0;
    for (std::size_t j = 1; j <= raw.size(); ++j) {
        acc += raw[j - 1];
        path.values.push_back(acc - (static_cast<double>(j) / n) * total);
    }
    path.meta["generator"] = "cumulative-demean";
    return path;
}

}  // namespace mls

#include "mls/stable.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "mls/quadrature.hpp"

namespace mls {

namespace {
constexpr double kPi = std::numbers::pi;
}

StableParams::StableParams(double a) : alpha(a) {
    if (!(a > 0.0 && a < 2.0))
        throw std::invalid_argument("StableParams: alpha must lie in (0,2)");
}

MomentRatioSpec::MomentRatioSpec(double p0_, double p_) : p0(p0_), p(p_) {
    if (!(p0 > 0.0)) throw std::invalid_argument("MomentRatioSpec: p0 must be > 0");
    if (!(p >= p0)) throw std::invalid_argument("MomentRatioSpec: p must be >= p0");
}

double ExtReal::value() const {
    if (!finite_) throw std::logic_error("ExtReal: value() on infinite moment");
    return value_;
}

double sample_sas_one(const StableParams& params, Rng& rng) {
    const double alpha = params.alpha;
    const double phi = kPi * (rng.uniform() - 0.5);
    const double w = -std::log(rng.uniform());
    if (alpha == 1.0) return std::tan(phi);
    const double t1 = std::sin(alpha * phi) / std::pow(std::cos(phi), 1.0 / alpha);
    const double t2 =
        std::pow(std::cos((1.0 - alpha) * phi) / w, (1.0 - alpha) / alpha);
    return t1 * t2;
}

std::vector<double> sample_sas(const StableParams& params, std::size_t count,
                               Rng& rng) {
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sample_sas_one(params, rng));
    return out;
}

double c_eta(double eta) {
    if (!(eta > 0.0 && eta < 2.0))
        throw std::invalid_argument("c_eta: eta must lie in (0,2)");
    // Head on [0,1] via the integrated sine series:
    //   int_0^1 x^{-eta} sin x dx = sum_k (-1)^k / ((2k+1)! (2k+2-eta)).
    // The endpoint singularity defeats bisection rules near eta=2; the
    // alternating series converges factorially and is exact to rounding.
    double head = 0.0;
    {
        double fact = 1.0;  // (2k+1)!
        for (int k = 0; k < 24; ++k) {
            if (k > 0) fact *= (2.0 * k) * (2.0 * k + 1.0);
            const double term = 1.0 / (fact * (2.0 * k + 2.0 - eta));
            head += (k % 2 == 0) ? term : -term;
            if (term < 1e-18) break;
        }
    }
    // Oscillatory tail over half-periods of sin.
    const double tail = quad::oscillatory_tail(
        [eta](double x) { return std::pow(x, -eta) * std::sin(x); }, 1.0,
        [](std::size_t k) { return kPi * static_cast<double>(k + 1); }, 1e-12);
    return 1.0 / (head + tail);
}

double sin_sq_integral(double p) {
    if (!(p > 0.0 && p < 2.0))
        throw std::invalid_argument("sin_sq_integral: p must lie in (0,2)");

    static std::map<double, double> cache;
    static std::mutex mtx;
    {
        std::lock_guard lock(mtx);
        auto it = cache.find(p);
        if (it != cache.end()) return it->second;
    }

    // Head on [0,1] via sin^2 u = (1 - cos 2u)/2 and the cosine series:
    //   int_0^1 u^{-p-1} sin^2 u du = sum_{k>=1} (-1)^{k+1} 2^{2k-1} / ((2k)! (2k-p)).
    // Exact to rounding; bisection rules stall on the u^{-p-1} endpoint.
    double head = 0.0;
    {
        double fact = 2.0;       // (2k)!
        double pow4 = 2.0;       // 2^{2k-1}
        for (int k = 1; k < 28; ++k) {
            if (k > 1) {
                fact *= (2.0 * k - 1.0) * (2.0 * k);
                pow4 *= 4.0;
            }
            const double term = pow4 / (fact * (2.0 * k - p));
            head += (k % 2 == 1) ? term : -term;
            if (term < 1e-18) break;
        }
    }
    // Tail: sin^2 u = (1 - cos 2u)/2; the monotone part integrates in closed
    // form, the cosine part is summed over its half-periods.
    const double osc = quad::oscillatory_tail(
        [p](double u) { return std::pow(u, -p - 1.0) * std::cos(2.0 * u); }, 1.0,
        [](std::size_t k) {
            return (2.0 * static_cast<double>(k) + 1.0) * kPi / 4.0;
        },
        1e-12);
    const double value = head + 0.5 / p - 0.5 * osc;

    std::lock_guard lock(mtx);
    cache.emplace(p, value);
    return value;
}

namespace {

// E|Z|^p for 0 < p < alpha <= 2, memoized. alpha=2 is admitted here (the
// ratio minimization grid covers [0,2]) even though StableParams is open.
double moment_finite(double alpha, double p) {
    static std::map<std::pair<double, double>, double> cache;
    static std::mutex mtx;
    const std::pair<double, double> key{alpha, p};
    {
        std::lock_guard lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const double value = std::exp2(p - 1.0) * std::tgamma(1.0 - p / alpha) /
                         (p * sin_sq_integral(p));
    std::lock_guard lock(mtx);
    cache.emplace(key, value);
    return value;
}

}  // namespace

ExtReal abs_moment(const StableParams& params, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("abs_moment: p must be > 0");
    if (p >= params.alpha) return ExtReal::infinite();
    return ExtReal::finite(moment_finite(params.alpha, p));
}

double theoretical_ratio(double alpha, const MomentRatioSpec& spec) {
    if (!(alpha >= 0.0 && alpha <= 2.0))
        throw std::invalid_argument("theoretical_ratio: alpha must lie in [0,2]");
    // The indicator 1_{p<alpha} is strict; alpha <= p0 also makes the
    // numerator moment infinite, so the ratio is 0 by convention.
    if (spec.p >= alpha || alpha <= spec.p0) return 0.0;
    const double m0 = moment_finite(alpha, spec.p0);
    const double mp = moment_finite(alpha, spec.p);
    return std::exp(std::log(m0) / spec.p0 - std::log(mp) / spec.p);
}

}  // namespace mls

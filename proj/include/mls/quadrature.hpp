#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace mls::quad {

namespace detail {

// Gauss 7 / Kronrod 15 on [-1,1]. Column 0: abscissa, 1: Gauss weight,
// 2: Kronrod weight. First row is the center node.
inline constexpr double gk_nw[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0,               0.204432940075298},
    {0.586087235467691, 0.0,               0.169004726639267},
    {0.864864423359769, 0.0,               0.104790010322250},
    {0.991455371120813, 0.0,               0.022935322010529},
};

template <class F>
double gk15(const F& f, double a, double b, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double y0 = f(c);
    double g7 = gk_nw[0][1] * y0;
    double k15 = gk_nw[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * gk_nw[i][0];
        const double y = f(c + dx) + f(c - dx);
        g7 += gk_nw[i][1] * y;
        k15 += gk_nw[i][2] * y;
    }
    g7 *= h;
    k15 *= h;
    err = std::abs(k15 - g7);
    return k15;
}

template <class F>
double adaptive_rec(const F& f, double a, double b, double tol, int depth) {
    double err;
    const double whole = gk15(f, a, b, err);
    if (err <= tol || depth <= 0) return whole;
    const double m = 0.5 * (a + b);
    return adaptive_rec(f, a, m, 0.5 * tol, depth - 1) +
           adaptive_rec(f, m, b, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod 7-15 with absolute tolerance. Endpoint
/// singularities must be integrable; the recursion depth bounds work on
/// pathological integrands.
template <class F>
double adaptive(const F& f, double a, double b, double abs_tol = 1e-10,
                int max_depth = 48) {
    if (!(a < b)) return 0.0;
    return detail::adaptive_rec(f, a, b, abs_tol, max_depth);
}

/// Tail integral of an oscillating integrand over [a, inf).
/// `zero_at(k)` must enumerate the sign-change points of the oscillating
/// factor in increasing order; segment integrals between consecutive zeros
/// then form an alternating, eventually decreasing series, summed with
/// iterated averaging.
template <class F, class Zeros>
double oscillatory_tail(const F& f, double a, const Zeros& zero_at,
                        double abs_tol = 1e-12, std::size_t max_segments = 200) {
    // First zero strictly beyond a.
    std::size_t k = 0;
    while (zero_at(k) <= a) ++k;

    constexpr std::size_t kWindow = 40;
    double partials[kWindow];
    std::size_t count = 0;

    double left = a;
    double partial = 0.0;
    double prev_estimate = 0.0;
    for (std::size_t seg = 0; seg < max_segments; ++seg) {
        const double right = zero_at(k + seg);
        partial += adaptive(f, left, right, abs_tol * 0.1, 32);
        left = right;

        if (count == kWindow) {
            for (std::size_t i = 1; i < kWindow; ++i) partials[i - 1] = partials[i];
            --count;
        }
        partials[count++] = partial;

        // Euler transform: repeated pairwise averaging of the partial sums
        // collapses the alternating series to its limit.
        double work[kWindow];
        for (std::size_t i = 0; i < count; ++i) work[i] = partials[i];
        for (std::size_t m = count; m > 1; --m)
            for (std::size_t i = 0; i + 1 < m; ++i)
                work[i] = 0.5 * (work[i] + work[i + 1]);
        const double estimate = work[0];

        if (seg > 3 && std::abs(estimate - prev_estimate) < abs_tol)
            return estimate;
        prev_estimate = estimate;
    }
    return prev_estimate;
}

}  // namespace mls::quad

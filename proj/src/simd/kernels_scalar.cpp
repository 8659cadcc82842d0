#include <cmath>
#include <cstddef>

#include "mls/simd/kernels.hpp"

namespace mls::kern {

namespace {

double s_sum_log_abs(const double* x, std::size_t n, std::size_t* skipped) {
    double sum = 0.0;
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(x[i]);
        if (a == 0.0) {
            ++zeros;
            continue;
        }
        sum += std::log2(a);
    }
    if (skipped) *skipped = zeros;
    return sum;
}

double s_sum_abs_pow(const double* x, std::size_t n, double p) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(x[i]);
        if (a == 0.0) continue;
        sum += std::exp(p * std::log(a));
    }
    return sum;
}

double s_sum_signed_exp(const double* q, const double* sf, std::size_t n,
                        double c) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += sf[i] * std::exp(c * q[i]);
    return sum;
}

double s_lfsm_sum(const double* q, const double* sgn, const double* v,
                  const double* logv, std::size_t n, double c, double h,
                  double t) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(t - v[i]);
        const double a = (d == 0.0) ? 0.0 : std::exp(h * std::log(d));
        const double b = std::exp(h * logv[i]);
        sum += sgn[i] * std::exp(c * q[i]) * (a - b);
    }
    return sum;
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend b{"scalar", s_sum_log_abs, s_sum_abs_pow,
                           s_sum_signed_exp, s_lfsm_sum};
    return b;
}

}  // namespace mls::kern

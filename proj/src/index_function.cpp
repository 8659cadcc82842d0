#include "mls/index_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mls {

IndexFunction::IndexFunction(Form f, std::vector<double> coeffs,
                             std::pair<double, double> range,
                             std::pair<double, double> span)
    : form_(f), coeffs_(std::move(coeffs)), range_(range), span_(span) {}

IndexFunction IndexFunction::affine(double a, double b,
                                    std::pair<double, double> range,
                                    std::pair<double, double> span) {
    IndexFunction f(Form::Affine, {a, b}, range, span);
    f.validate();
    return f;
}

IndexFunction IndexFunction::constant(double a, std::pair<double, double> range,
                                      std::pair<double, double> span) {
    return affine(a, 0.0, range, span);
}

IndexFunction IndexFunction::logistic(double a, double b, double c, double d,
                                      std::pair<double, double> range,
                                      std::pair<double, double> span) {
    IndexFunction f(Form::Logistic, {a, b, c, d}, range, span);
    f.validate();
    return f;
}

IndexFunction IndexFunction::sinusoidal(double a, double b,
                                        std::pair<double, double> range,
                                        std::pair<double, double> span) {
    IndexFunction f(Form::Sinusoidal, {a, b}, range, span);
    f.validate();
    return f;
}

IndexFunction IndexFunction::tabulated(std::vector<double> ts,
                                       std::vector<double> vals,
                                       std::pair<double, double> range) {
    if (ts.size() < 2 || ts.size() != vals.size())
        throw std::invalid_argument("IndexFunction: need >= 2 matching knots");
    if (!std::is_sorted(ts.begin(), ts.end()))
        throw std::invalid_argument("IndexFunction: knot times must be sorted");
    IndexFunction f(Form::Tabulated, {}, range, {ts.front(), ts.back()});
    f.knots_t_ = std::move(ts);
    f.knots_v_ = std::move(vals);
    f.validate();
    return f;
}

double IndexFunction::operator()(double t) const {
    switch (form_) {
        case Form::Affine:
            return coeffs_[0] + coeffs_[1] * t;
        case Form::Logistic:
            return coeffs_[0] + coeffs_[1] / (1.0 + std::exp(coeffs_[2] + coeffs_[3] * t));
        case Form::Sinusoidal:
            return coeffs_[0] + coeffs_[1] * std::sin(2.0 * std::numbers::pi * t);
        case Form::Tabulated: {
            if (t <= knots_t_.front()) return knots_v_.front();
            if (t >= knots_t_.back()) return knots_v_.back();
            auto it = std::upper_bound(knots_t_.begin(), knots_t_.end(), t);
            const std::size_t j = static_cast<std::size_t>(it - knots_t_.begin());
            const double w = (t - knots_t_[j - 1]) / (knots_t_[j] - knots_t_[j - 1]);
            return knots_v_[j - 1] + w * (knots_v_[j] - knots_v_[j - 1]);
        }
    }
    return 0.0;  // unreachable
}

bool IndexFunction::is_constant() const {
    if (form_ == Form::Affine) return coeffs_[1] == 0.0;
    if (form_ == Form::Sinusoidal) return coeffs_[1] == 0.0;
    if (form_ == Form::Logistic) return coeffs_[1] == 0.0;
    if (form_ == Form::Tabulated)
        return std::all_of(knots_v_.begin(), knots_v_.end(),
                           [&](double v) { return v == knots_v_.front(); });
    return false;
}

void IndexFunction::validate() const {
    if (!(range_.first < range_.second))
        throw std::invalid_argument("IndexFunction: empty declared range");
    // Dense sampling; the supported families are smooth and slowly varying.
    constexpr int kSamples = 10000;
    const double t0 = span_.first, t1 = span_.second;
    for (int i = 0; i <= kSamples; ++i) {
        const double t = t0 + (t1 - t0) * static_cast<double>(i) / kSamples;
        const double v = (*this)(t);
        if (!(v >= range_.first && v <= range_.second)) {
            std::ostringstream os;
            os << "IndexFunction: value " << v << " at t=" << t
               << " leaves declared range [" << range_.first << ","
               << range_.second << "]";
            throw std::invalid_argument(os.str());
        }
    }
}

std::string IndexFunction::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (form_) {
        case Form::Affine:
            os << "affine(" << coeffs_[0] << "," << coeffs_[1] << ")";
            break;
        case Form::Logistic:
            os << "logistic(" << coeffs_[0] << "," << coeffs_[1] << ","
               << coeffs_[2] << "," << coeffs_[3] << ")";
            break;
        case Form::Sinusoidal:
            os << "sinusoidal(" << coeffs_[0] << "," << coeffs_[1] << ")";
            break;
        case Form::Tabulated:
            os << "tabulated(" << knots_t_.size() << " knots)";
            break;
    }
    return os.str();
}

}  // namespace mls

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mls {

/// A validated scalar function of time: either a stability function
/// alpha(t) or a localisability function H(t). Construction checks, by
/// dense sampling over the simulation span, that the values stay inside
/// the declared range.
class IndexFunction {
public:
    enum class Form { Affine, Logistic, Sinusoidal, Tabulated };

    /// a + b*t
    static IndexFunction affine(double a, double b, std::pair<double, double> range,
                                std::pair<double, double> span = {0.0, 1.0});
    static IndexFunction constant(double a, std::pair<double, double> range,
                                  std::pair<double, double> span = {0.0, 1.0});
    /// a + b / (1 + exp(c + d*t))
    static IndexFunction logistic(double a, double b, double c, double d,
                                  std::pair<double, double> range,
                                  std::pair<double, double> span = {0.0, 1.0});
    /// a + b * sin(2*pi*t)
    static IndexFunction sinusoidal(double a, double b,
                                    std::pair<double, double> range,
                                    std::pair<double, double> span = {0.0, 1.0});
    /// Piecewise-linear interpolation of (t, value) knots.
    static IndexFunction tabulated(std::vector<double> ts, std::vector<double> vals,
                                   std::pair<double, double> range);

    double operator()(double t) const;

    bool is_constant() const;
    std::pair<double, double> declared_range() const { return range_; }
    std::pair<double, double> span() const { return span_; }
    Form form() const { return form_; }

    /// Human/machine-readable description, used in sidecars and config
    /// hashes, e.g. "affine(1.98,-0.96)".
    std::string describe() const;

private:
    IndexFunction(Form f, std::vector<double> coeffs,
                  std::pair<double, double> range, std::pair<double, double> span);
    void validate() const;

    Form form_;
    std::vector<double> coeffs_;     // interpretation depends on form
    std::vector<double> knots_t_;    // tabulated only
    std::vector<double> knots_v_;
    std::pair<double, double> range_;
    std::pair<double, double> span_;
};

}  // namespace mls

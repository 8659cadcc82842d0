#pragma once

#include <vector>

namespace mls::stats {

double mean(const std::vector<double>& xs);
double median(std::vector<double> xs);  // by copy; averages the middle pair
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

struct KsResult {
    double statistic;
    double p_value;  // asymptotic two-sample p-value
};

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace mls::stats

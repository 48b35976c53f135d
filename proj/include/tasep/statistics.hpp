#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "tasep/common.hpp"

namespace tasep {

/// Empirical distribution function of a sample.
class Ecdf {
  public:
    explicit Ecdf(std::vector<double> samples) : xs_(std::move(samples)) {
        require(xs_.size() >= 100, "Ecdf: need at least 100 samples");
        std::sort(xs_.begin(), xs_.end());
    }

    double operator()(double x) const {
        auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
        return static_cast<double>(it - xs_.begin()) / static_cast<double>(xs_.size());
    }

    std::size_t size() const { return xs_.size(); }
    const std::vector<double>& sorted() const { return xs_; }

  private:
    std::vector<double> xs_;
};

/// Kolmogorov-Smirnov statistic sup_x |F_n(x) - F(x)|, scanning both one-sided
/// gaps at every sample point.
inline double ks_statistic(const Ecdf& ecdf, const std::function<double(double)>& cdf) {
    const auto& xs = ecdf.sorted();
    double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double f = cdf(xs[i]);
        d = std::fmax(d, std::fabs(f - static_cast<double>(i) / n));
        d = std::fmax(d, std::fabs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

inline double sample_mean(const std::vector<double>& v) {
    require(!v.empty(), "sample_mean: empty sample");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

/// Unbiased sample variance (n - 1 in the denominator).
inline double sample_variance(const std::vector<double>& v) {
    require(v.size() >= 2, "sample_variance: need at least two points");
    double m = sample_mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

/// Variance of paired differences a_i - b_i.  With both coordinates driven by
/// common random numbers this estimates the two-time variance function
/// g(u) = Var(A(u) - A(0)), which grows like 2u for small u and saturates at
/// twice the one-point variance.
inline double variance_g(const std::vector<double>& a, const std::vector<double>& b) {
    require(a.size() == b.size(), "variance_g: length mismatch");
    require(a.size() >= 100, "variance_g: need at least 100 pairs");
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    return sample_variance(diff);
}

/// L1 distance between a binned empirical density and a reference, where the
/// reference is supplied through its exact bin averages.
inline double l1_distance_binned(const std::vector<double>& emp, double lo, double hi,
                                 const std::function<double(double, double)>& ref_mean) {
    require(!emp.empty() && hi > lo, "l1_distance_binned: bad input");
    double w = (hi - lo) / static_cast<double>(emp.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < emp.size(); ++k) {
        double a = lo + w * static_cast<double>(k);
        acc += std::fabs(emp[k] - ref_mean(a, a + w)) * w;
    }
    return acc;
}

}  // namespace tasep

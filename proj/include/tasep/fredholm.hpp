#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "tasep/common.hpp"
#include "tasep/kernels.hpp"
#include "tasep/special_functions.hpp"

namespace tasep {

enum class LimitProcess {
    airy2,  // curved-profile limit, one-point law F_GUE
    airy1,  // flat-profile limit, one-point law F_GOE(2s)
};

/// Threshold s at scaled time u, one entry per time slice of a joint query.
struct SpaceTimePoint {
    double u;
    double s;
};

struct FredholmOptions {
    double window = 20.0;  // each slice integrates over [s_i, s_i + window]
    int nodes = 96;        // Gauss-Legendre nodes per slice
    // Conjugation exponent: entries carry e^{theta (x - y)}, which leaves the
    // determinant invariant but improves conditioning.  NaN picks the
    // per-process default (0 for airy2, 0.5 for airy1).
    double theta = std::numeric_limits<double>::quiet_NaN();
};

struct DistributionQuery {
    LimitProcess process = LimitProcess::airy2;
    std::vector<SpaceTimePoint> points;
    FredholmOptions options{};
};

namespace detail {

inline double resolve_theta(const DistributionQuery& q) {
    if (!std::isnan(q.options.theta)) return q.options.theta;
    return q.process == LimitProcess::airy1 ? 0.5 : 0.0;
}

// Discretize 1_{x > s_i} K 1_{y > s_j} over all slices with per-slice
// Gauss-Legendre rules on [s_i, s_i + window]; entry ((i,a),(j,b)) is
// sqrt(w_a w_b) e^{theta (x_a - y_b)} K((u_i, x_a), (u_j, y_b)).
inline std::vector<double> nystrom_matrix(const DistributionQuery& q,
                                          std::size_t* dim_out) {
    require(!q.points.empty(), "nystrom_matrix: no slices in query");
    require(q.options.nodes >= 4, "nystrom_matrix: need at least 4 nodes");
    require(q.options.window > 0.0, "nystrom_matrix: window must be positive");
    double theta = resolve_theta(q);
    std::size_t m = q.points.size(), n = static_cast<std::size_t>(q.options.nodes);
    std::size_t dim = m * n;
    Quadrature base = gauss_legendre(q.options.nodes);

    std::vector<std::vector<double>> xs(m), sqw(m);
    for (std::size_t i = 0; i < m; ++i) {
        auto rule = mapped_rule(base, q.points[i].s, q.points[i].s + q.options.window);
        xs[i] = rule.x;
        sqw[i].resize(n);
        for (std::size_t a = 0; a < n; ++a) sqw[i][a] = std::sqrt(rule.w[a]);
    }

    std::vector<double> mat(dim * dim);
    std::vector<double> block;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (q.process == LimitProcess::airy2) {
                k2_block(q.points[i].u, xs[i], q.points[j].u, xs[j], block);
            } else {
                k1_block(q.points[i].u, xs[i], q.points[j].u, xs[j], block);
            }
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) {
                    mat[(i * n + a) * dim + (j * n + b)] =
                        sqw[i][a] * sqw[j][b] *
                        std::exp(theta * (xs[i][a] - xs[j][b])) * block[a * n + b];
                }
            }
        }
    }
    *dim_out = dim;
    return mat;
}

// det(I - M) by in-place LU with partial pivoting.
inline double det_identity_minus(std::vector<double> m, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double id = (i == j) ? 1.0 : 0.0;
            m[i * n + j] = id - m[i * n + j];
        }
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double big = std::fabs(m[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::fabs(m[i * n + k]) > big) {
                big = std::fabs(m[i * n + k]);
                piv = i;
            }
        }
        if (big == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m[piv * n + j], m[k * n + j]);
            det = -det;
        }
        det *= m[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = m[i * n + k] / m[k * n + k];
            for (std::size_t j = k + 1; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
        }
    }
    return det;
}

// Truncated Fredholm series sum_{k=0}^{order} (-1)^k e_k(M), with the
// elementary symmetric functions obtained from power sums (traces of matrix
// powers) through Newton's identities.  Shares nothing with the LU path past
// assembly, so it serves as an internal cross-check of the determinant.
inline double fredholm_series_value(const std::vector<double>& m, std::size_t n,
                                    int order) {
    require(order >= 0, "fredholm_series_value: negative order");
    std::vector<double> p(order + 1, 0.0);  // p[k] = tr(M^k), k >= 1
    std::vector<double> power(m), next(n * n);
    for (int k = 1; k <= order; ++k) {
        double tr = 0.0;
        for (std::size_t i = 0; i < n; ++i) tr += power[i * n + i];
        p[k] = tr;
        if (k == order) break;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double acc = 0.0;
                for (std::size_t l = 0; l < n; ++l) acc += power[i * n + l] * m[l * n + j];
                next[i * n + j] = acc;
            }
        }
        power.swap(next);
    }
    std::vector<double> e(order + 1, 0.0);
    e[0] = 1.0;
    for (int k = 1; k <= order; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) {
            double term = e[k - j] * p[j];
            acc += (j % 2 == 1) ? term : -term;
        }
        e[k] = acc / k;
    }
    double out = 0.0;
    for (int k = 0; k <= order; ++k) out += (k % 2 == 0) ? e[k] : -e[k];
    return out;
}

inline void check_probability(double v, const char* who) {
    if (v < -1e-6 || v > 1.0 + 1e-6)
        throw std::runtime_error(std::string(who) +
                                 ": determinant left [0,1] beyond tolerance; "
                                 "discretization unreliable for this query");
}

inline void check_thresholds(const DistributionQuery& q) {
    for (const auto& p : q.points)
        require(p.s >= -6.0 && p.s <= 6.0,
                "fredholm: thresholds supported on [-6, 6] only");
}

}  // namespace detail

/// Raw Fredholm determinant det(I - chi K chi) for the query's kernel and
/// slices.  No probability clamp; use joint_law for guarded queries.
inline double fredholm_det(const DistributionQuery& q) {
    std::size_t dim = 0;
    auto m = detail::nystrom_matrix(q, &dim);
    return detail::det_identity_minus(std::move(m), dim);
}

/// Truncated Fredholm series of the same discretization (independent of the
/// LU path).  Converges rapidly in order because chi K chi is trace class
/// with fast-decaying spectrum on these windows.
inline double fredholm_series(const DistributionQuery& q, int order) {
    std::size_t dim = 0;
    auto m = detail::nystrom_matrix(q, &dim);
    return detail::fredholm_series_value(m, dim, order);
}

/// P(A2(u) <= s) for a single space-time point; equals F_GUE(s).
inline double f2_point(double s, const FredholmOptions& opts = {}) {
    DistributionQuery q{LimitProcess::airy2, {{0.0, s}}, opts};
    detail::check_thresholds(q);
    double v = fredholm_det(q);
    detail::check_probability(v, "f2_point");
    return v;
}

/// P(A1(u) <= s) for a single space-time point; equals F_GOE(2s).
inline double f1_scaled_point(double s, const FredholmOptions& opts = {}) {
    DistributionQuery q{LimitProcess::airy1, {{0.0, s}}, opts};
    detail::check_thresholds(q);
    double v = fredholm_det(q);
    detail::check_probability(v, "f1_scaled_point");
    return v;
}

struct JointResult {
    double value;
    double error_estimate;
};

/// Joint distribution P(A(u_1) <= s_1, ..., A(u_m) <= s_m).  Evaluates the
/// determinant at the requested resolution and again with window and node
/// count doubled; the difference is reported as the error estimate.
inline JointResult joint_law(const DistributionQuery& q) {
    detail::check_thresholds(q);
    double d1 = fredholm_det(q);
    DistributionQuery fine = q;
    fine.options.window = 2.0 * q.options.window;
    fine.options.nodes = 2 * q.options.nodes;
    double d2 = fredholm_det(fine);
    detail::check_probability(d2, "joint_law");
    return {d2, std::fabs(d2 - d1)};
}

/// Piecewise-linear CDF table.  Outside the tabulated range the end values
/// (which should already be within tail tolerance of 0 and 1) are returned.
class TabulatedCdf {
  public:
    TabulatedCdf(std::vector<double> xs, std::vector<double> fs)
        : xs_(std::move(xs)), fs_(std::move(fs)) {
        require(xs_.size() == fs_.size() && xs_.size() >= 2,
                "TabulatedCdf: need matching arrays with at least 2 entries");
        for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
            require(xs_[i] < xs_[i + 1], "TabulatedCdf: abscissae must increase");
            require(fs_[i] <= fs_[i + 1] + 1e-12, "TabulatedCdf: values must not decrease");
        }
    }

    double operator()(double x) const {
        if (x <= xs_.front()) return fs_.front();
        if (x >= xs_.back()) return fs_.back();
        std::size_t lo = 0, hi = xs_.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            (xs_[mid] <= x ? lo : hi) = mid;
        }
        double t = (x - xs_[lo]) / (xs_[lo + 1] - xs_[lo]);
        double v = fs_[lo] + t * (fs_[lo + 1] - fs_[lo]);
        return std::fmin(1.0, std::fmax(0.0, v));
    }

    const std::vector<double>& abscissae() const { return xs_; }
    const std::vector<double>& values() const { return fs_; }

  private:
    std::vector<double> xs_;
    std::vector<double> fs_;
};

/// Sample a one-point law on a uniform grid into a TabulatedCdf.
inline TabulatedCdf tabulate_cdf(LimitProcess process, double lo, double hi,
                                 int points, const FredholmOptions& opts = {}) {
    require(points >= 2 && hi > lo, "tabulate_cdf: bad grid");
    std::vector<double> xs(points), fs(points);
    for (int i = 0; i < points; ++i) {
        xs[i] = lo + (hi - lo) * i / (points - 1);
        fs[i] = process == LimitProcess::airy2 ? f2_point(xs[i], opts)
                                               : f1_scaled_point(xs[i], opts);
    }
    return TabulatedCdf(std::move(xs), std::move(fs));
}

struct CdfMoments {
    double mean;
    double variance;
    double mean_error;
    double variance_error;
};

/// Mean and variance of a distribution given through its CDF.  Integrates
/// against dF by the midpoint rule on [lo, hi] at the requested resolution
/// and at half the step; Richardson-extrapolates and reports the grid
/// differences as error estimates.  Requires the window to hold all but
/// tail_tol of the probability mass.
inline CdfMoments cdf_moments(const std::function<double(double)>& cdf, double lo,
                              double hi, double tail_tol = 1e-8,
                              int intervals = 256) {
    require(intervals >= 8, "cdf_moments: too few intervals");
    require(hi > lo, "cdf_moments: bad window");
    int n2 = 2 * intervals;
    std::vector<double> f(n2 + 1);
    for (int i = 0; i <= n2; ++i) f[i] = cdf(lo + (hi - lo) * i / n2);
    require(f.front() <= tail_tol && 1.0 - f.back() <= tail_tol,
            "cdf_moments: window misses more than tail_tol of mass");

    auto pass = [&](int stride) {
        double m1 = 0.0, m2 = 0.0;
        for (int i = 0; i + stride <= n2; i += stride) {
            double a = lo + (hi - lo) * i / n2;
            double b = lo + (hi - lo) * (i + stride) / n2;
            double mid = 0.5 * (a + b);
            double dmass = f[i + stride] - f[i];
            m1 += mid * dmass;
            m2 += mid * mid * dmass;
        }
        return std::pair<double, double>(m1, m2);
    };
    auto [m1c, m2c] = pass(2);
    auto [m1f, m2f] = pass(1);
    double mean = m1f + (m1f - m1c) / 3.0;
    double raw2 = m2f + (m2f - m2c) / 3.0;
    double mean_err = std::fabs(m1f - m1c) + tail_tol * (std::fabs(lo) + std::fabs(hi));
    double var = raw2 - mean * mean;
    double var_err = std::fabs(m2f - m2c) + 2.0 * std::fabs(mean) * mean_err +
                     tail_tol * (lo * lo + hi * hi);
    return {mean, var, mean_err, var_err};
}

}  // namespace tasep

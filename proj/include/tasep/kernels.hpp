#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "tasep/common.hpp"
#include "tasep/special_functions.hpp"

namespace tasep {

/// Airy two-point kernel A2(x,y) = int_0^inf Ai(x+t) Ai(y+t) dt.
inline double a2_eval(double x, double y) {
    return airy_tail_integral(x, y, 0.0, 0.0);
}

/// Space-time kernel governing the flat-profile limit process.  Arguments are
/// (time u, space s) pairs:
///   K1((u,s),(u',s')) = -exp(-(s'-s)^2/(4 du)) / sqrt(4 pi du) * [du > 0]
///                       + Ai(s+s'+du^2) exp(du (s+s') + (2/3) du^3),
/// du = u' - u.  The Airy factor is evaluated through its log on the decaying
/// side so the product with the (possibly huge) exponential never overflows.
inline double k1_eval(double u, double s, double up, double sp) {
    double du = up - u;
    double arg = s + sp + du * du;
    double expo = du * (s + sp) + (2.0 / 3.0) * cube(du);
    double airy_part;
    if (arg >= 9.0) {
        airy_part = std::exp(detail::airy_ai_log_right(arg) + expo);
    } else {
        airy_part = detail::airy_ai_any(arg) * std::exp(expo);
    }
    double gauss = 0.0;
    if (du > 0.0) {
        gauss = -std::exp(-sq(sp - s) / (4.0 * du)) / std::sqrt(4.0 * kPi * du);
    }
    return gauss + airy_part;
}

namespace detail {

// Smallest entry of two node lists; the most negative Airy argument controls
// panel refinement and truncation of the lambda quadratures.
inline double min_node(const std::vector<double>& a, const std::vector<double>& b) {
    double m = a.empty() ? 0.0 : *std::min_element(a.begin(), a.end());
    if (!b.empty()) m = std::fmin(m, *std::min_element(b.begin(), b.end()));
    return m;
}

// Lambda grid for the branch int_0^inf e^{du t} Ai(s+t)Ai(s'+t) dt, du <= 0.
inline Quadrature k2_pos_grid(double floor_arg) {
    double hi = std::fmax(0.0, 40.0 - floor_arg);
    return airy_panel_grid(0.0, hi, floor_arg);
}

// Lambda grid for the branch -int_{-inf}^0 e^{du t} Ai(s+t)Ai(s'+t) dt,
// du > 0.  The exponential weight caps the useful range at e^{-40}.
inline Quadrature k2_neg_grid(double du, double floor_arg) {
    double lam = std::fmax(40.0 / du, 40.0);
    return airy_panel_grid(-lam, 0.0, floor_arg);
}

// Fill M (row-major, s.size() x sp.size()) with K2 values for one pair of
// time slices.  All entries share one lambda grid, so the Airy evaluations
// are O((|s|+|s'|) * Q) instead of O(|s| |s'| Q).
inline void k2_block(double u, const std::vector<double>& s, double up,
                     const std::vector<double>& sp, std::vector<double>& M) {
    double du = up - u;
    double floor_arg = min_node(s, sp);
    Quadrature grid;
    double sign;
    if (du <= 0.0) {
        grid = k2_pos_grid(floor_arg);
        sign = 1.0;
    } else {
        require(du >= 0.01,
                "k2_block: time separations below 0.01 are not supported");
        grid = k2_neg_grid(du, floor_arg);
        sign = -1.0;
    }
    std::size_t q = grid.x.size(), ns = s.size(), nsp = sp.size();
    std::vector<double> ww(q);
    for (std::size_t k = 0; k < q; ++k) ww[k] = grid.w[k] * std::exp(du * grid.x[k]);
    std::vector<double> av(ns * q), bv(nsp * q);
    for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t k = 0; k < q; ++k) av[i * q + k] = airy_ai_any(s[i] + grid.x[k]);
    for (std::size_t j = 0; j < nsp; ++j)
        for (std::size_t k = 0; k < q; ++k)
            bv[j * q + k] = ww[k] * airy_ai_any(sp[j] + grid.x[k]);
    M.assign(ns * nsp, 0.0);
    for (std::size_t i = 0; i < ns; ++i) {
        for (std::size_t j = 0; j < nsp; ++j) {
            double acc = 0.0;
            const double* arow = &av[i * q];
            const double* brow = &bv[j * q];
            for (std::size_t k = 0; k < q; ++k) acc += arow[k] * brow[k];
            M[i * nsp + j] = sign * acc;
        }
    }
}

inline void k1_block(double u, const std::vector<double>& s, double up,
                     const std::vector<double>& sp, std::vector<double>& M) {
    std::size_t ns = s.size(), nsp = sp.size();
    M.assign(ns * nsp, 0.0);
    for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t j = 0; j < nsp; ++j) M[i * nsp + j] = k1_eval(u, s[i], up, sp[j]);
}

}  // namespace detail

/// Space-time kernel of the curved-profile limit process:
///   u >= u': K2((u,s),(u',s')) =  int_0^inf    e^{(u'-u)t} Ai(s+t)Ai(s'+t) dt
///   u <  u': K2((u,s),(u',s')) = -int_{-inf}^0 e^{(u'-u)t} Ai(s+t)Ai(s'+t) dt
/// Equal times reduce to A2.  Separations 0 < u'-u < 0.01 are rejected: the
/// backward branch would need an oscillatory quadrature thousands of units long.
inline double k2_eval(double u, double s, double up, double sp) {
    double du = up - u;
    if (du <= 0.0) return airy_tail_integral(s, sp, 0.0, du);
    require(du >= 0.01, "k2_eval: time separations below 0.01 are not supported");
    Quadrature grid = detail::k2_neg_grid(du, std::fmin(s, sp));
    double sum = 0.0;
    for (std::size_t k = 0; k < grid.x.size(); ++k) {
        double t = grid.x[k];
        sum += grid.w[k] * std::exp(du * t) * detail::airy_ai_any(s + t) *
               detail::airy_ai_any(sp + t);
    }
    return -sum;
}

}  // namespace tasep

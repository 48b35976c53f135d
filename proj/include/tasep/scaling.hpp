#pragma once

#include <cmath>
#include <vector>

#include "tasep/common.hpp"

namespace tasep {

/// Tracked particle index for scaled position u at time t, step profile:
/// n = floor(t/4 + u (t/2)^{2/3}).
inline long long step_index(double u, double t) {
    return static_cast<long long>(std::floor(t / 4.0 + u * std::pow(t / 2.0, 2.0 / 3.0)));
}

/// Fluctuation coordinate for the step profile.  The map
///   (x_n(t) + 2u (t/2)^{2/3} - u^2 (t/2)^{1/3}) / (-(t/2)^{1/3})
/// converges, jointly in u, to the stationary curved-profile limit process;
/// its one-point law is F_GUE for every u.
inline double rescale_step(long long xn, double u, double t) {
    double c13 = std::pow(t / 2.0, 1.0 / 3.0);
    double c23 = std::pow(t / 2.0, 2.0 / 3.0);
    return (static_cast<double>(xn) + 2.0 * u * c23 - u * u * c13) / (-c13);
}

/// Tracked particle index for the alternating profile: floor(t/4 + u t^{2/3}).
inline long long alternating_index(double u, double t) {
    return static_cast<long long>(std::floor(t / 4.0 + u * std::pow(t, 2.0 / 3.0)));
}

/// Fluctuation coordinate for the alternating profile:
///   (x_n(t) + 2u t^{2/3}) / (-t^{1/3}),
/// converging to the flat-profile limit process (one-point law F_GOE(2s)).
inline double rescale_alternating(long long xn, double u, double t) {
    return (static_cast<double>(xn) + 2.0 * u * std::pow(t, 2.0 / 3.0)) /
           (-std::pow(t, 1.0 / 3.0));
}

/// Nonuniversal constants of the d-periodic profile under the sequential
/// discrete update with jump probability p.
struct PeriodicConstants {
    double speed;    // tagged-particle speed p(d-1)/(d-p)
    double flux;     // particle flux through a fixed bond, speed/d
    double kappa;    // fluctuation scale: x fluctuates on kappa t^{1/3}
    double mu;       // index-shift coefficient, -2 kappa^2 / (d-1)
};

inline PeriodicConstants periodic_constants(int d, double p) {
    require(d >= 2, "periodic_constants: need spacing d >= 2");
    require(p > 0.0 && p < 1.0, "periodic_constants: p must be in (0,1)");
    PeriodicConstants c;
    c.speed = p * (d - 1.0) / (d - p);
    c.flux = c.speed / d;
    c.kappa = std::pow(2.0 * p * (1.0 - p), 1.0 / 3.0) *
              std::pow(d * (d - 1.0), 2.0 / 3.0) / (d - p);
    c.mu = -2.0 * c.kappa * c.kappa / (d - 1.0);
    return c;
}

/// Tracked particle index for the periodic profile:
/// n = floor(flux t - (mu u / d) t^{2/3}).
inline long long periodic_index(int d, double p, double u, double t) {
    PeriodicConstants c = periodic_constants(d, p);
    return static_cast<long long>(
        std::floor(c.flux * t - (c.mu * u / d) * std::pow(t, 2.0 / 3.0)));
}

/// Fluctuation coordinate for the periodic profile, using the particle index
/// n actually tracked:  (x_n(t) - speed t + d n) / (-kappa t^{1/3}).
/// The alternating continuous case is the kappa = 1, speed = 1/2 instance.
inline double rescale_periodic(long long xn, long long n, int d, double p,
                               double t) {
    PeriodicConstants c = periodic_constants(d, p);
    return (static_cast<double>(xn) - c.speed * t + static_cast<double>(d) * n) /
           (-c.kappa * std::pow(t, 1.0 / 3.0));
}

/// Hydrodynamic density of the step profile in the ray coordinate xi = x/t:
/// a linear rarefaction fan between full and empty.
inline double rost_density(double xi) {
    if (xi <= -1.0) return 1.0;
    if (xi >= 1.0) return 0.0;
    return (1.0 - xi) / 2.0;
}

/// Exact average of rost_density over [a, b].
inline double rost_density_mean(double a, double b) {
    require(b > a, "rost_density_mean: empty interval");
    auto primitive = [](double x) {  // integral of rost_density from -1
        if (x <= -1.0) return x + 1.0;
        if (x >= 1.0) return 1.0;
        return (x + 1.0) - (x + 1.0) * (x + 1.0) / 4.0;
    };
    return (primitive(b) - primitive(a)) / (b - a);
}

/// Mean occupation per bin of the ray coordinate: bin k covers
/// xi in [lo + k w, lo + (k+1) w).  A site x contributes to the bin holding
/// x / t; each bin is normalized by the number of integer sites it holds.
inline std::vector<double> empirical_density(const std::vector<long long>& positions,
                                             double t, double xi_lo, double xi_hi,
                                             int bins) {
    require(bins >= 1 && xi_hi > xi_lo, "empirical_density: bad binning");
    require(t > 0.0, "empirical_density: need positive time");
    std::vector<double> hits(static_cast<std::size_t>(bins), 0.0);
    std::vector<double> sites(static_cast<std::size_t>(bins), 0.0);
    double w = (xi_hi - xi_lo) / bins;
    long long x_lo = static_cast<long long>(std::ceil(xi_lo * t));
    long long x_hi = static_cast<long long>(std::floor(xi_hi * t));
    for (long long x = x_lo; x <= x_hi; ++x) {
        int k = static_cast<int>(std::floor((static_cast<double>(x) / t - xi_lo) / w));
        if (k < 0 || k >= bins) continue;
        sites[static_cast<std::size_t>(k)] += 1.0;
    }
    for (long long x : positions) {
        if (x < x_lo || x > x_hi) continue;
        int k = static_cast<int>(std::floor((static_cast<double>(x) / t - xi_lo) / w));
        if (k < 0 || k >= bins) continue;
        hits[static_cast<std::size_t>(k)] += 1.0;
    }
    std::vector<double> out(static_cast<std::size_t>(bins), 0.0);
    for (int k = 0; k < bins; ++k)
        out[static_cast<std::size_t>(k)] =
            sites[static_cast<std::size_t>(k)] > 0.0
                ? hits[static_cast<std::size_t>(k)] / sites[static_cast<std::size_t>(k)]
                : 0.0;
    return out;
}

}  // namespace tasep

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "tasep/common.hpp"

namespace tasep {
namespace detail {

// Double-double arithmetic: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
// Gives ~32 significant digits, enough to absorb the catastrophic cancellation
// of the Airy Maclaurin series out to |x| ~ 9 (terms peak near e^{2|x|^{3/2}/3}
// while the sum is O(1)).
struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

// Requires |a| >= |b| or a == 0.
inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline DD dd_mul_d(DD a, double b) {
    DD p = two_prod(a.hi, b);
    return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline DD dd_div_d(DD a, double b) {
    double q = a.hi / b;
    DD p = two_prod(q, b);
    double r = ((a.hi - p.hi) - p.lo + a.lo) / b;
    return quick_two_sum(q, r);
}

// Ai(0) and -Ai'(0) split to double-double precision.
inline constexpr double kAi0Hi = 0.3550280538878172;
inline constexpr double kAi0Lo = 2.05233632436212e-17;
inline constexpr double kAip0Hi = 0.2588194037928068;
inline constexpr double kAip0Lo = -2.522243111610832e-17;

// Maclaurin evaluation of Ai and Ai' for |x| <= 9.
// Ai(x) = c1*f(x) - c2*g(x) with
//   f = sum 3^k (1/3)_k x^{3k}/(3k)!,  g = sum 3^k (2/3)_k x^{3k+1}/(3k+1)!
// Term recurrences: f_{k+1}/f_k = x^3/((3k+2)(3k+3)),
//                   g_{k+1}/g_k = x^3/((3k+3)(3k+4)).
inline void airy_maclaurin(double x, double* ai, double* aip) {
    DD x3 = dd_mul_d(two_prod(x, x), x);

    DD f{1.0, 0.0}, sum_f = f;
    DD g{x, 0.0}, sum_g = g;
    // Derivative series: f' terms ratio x^3/((3k)(3k+2)) starting at x^2/2,
    //                    g' terms ratio x^3/((3k+1)(3k+3)) starting at 1.
    DD fp{0.5 * x * x, 0.0}, sum_fp = fp;
    DD gp{1.0, 0.0}, sum_gp = gp;

    for (int k = 0; k < 400; ++k) {
        f = dd_div_d(dd_mul(f, x3), (3.0 * k + 2.0) * (3.0 * k + 3.0));
        g = dd_div_d(dd_mul(g, x3), (3.0 * k + 3.0) * (3.0 * k + 4.0));
        fp = dd_div_d(dd_mul(fp, x3), (3.0 * k + 3.0) * (3.0 * k + 5.0));
        gp = dd_div_d(dd_mul(gp, x3), (3.0 * k + 1.0) * (3.0 * k + 3.0));
        sum_f = dd_add(sum_f, f);
        sum_g = dd_add(sum_g, g);
        sum_fp = dd_add(sum_fp, fp);
        sum_gp = dd_add(sum_gp, gp);
        double biggest = std::fmax(std::fmax(std::fabs(f.hi), std::fabs(g.hi)),
                                   std::fmax(std::fabs(fp.hi), std::fabs(gp.hi)));
        if (biggest < 1e-40) break;
    }

    DD c1{kAi0Hi, kAi0Lo};
    DD c2{kAip0Hi, kAip0Lo};
    if (ai) {
        DD v = dd_add(dd_mul(c1, sum_f), dd_mul(dd_mul_d(c2, -1.0), sum_g));
        *ai = v.hi + v.lo;
    }
    if (aip) {
        DD v = dd_add(dd_mul(c1, sum_fp), dd_mul(dd_mul_d(c2, -1.0), sum_gp));
        *aip = v.hi + v.lo;
    }
}

// Coefficients of the large-|x| expansions: c_0 = 1,
// c_{k+1}/c_k = (3k+1/2)(3k+3/2)(3k+5/2)/(54(k+1)(k+1/2)), and the derivative
// coefficients v_k = (6k+1)/(1-6k) c_k.  The series are divergent; we sum to
// the smallest term, which at |x| >= 9 leaves an error ~ e^{-2*zeta} << 1e-16
// relative.
inline double asym_coeff_ratio(int k) {
    return (3.0 * k + 0.5) * (3.0 * k + 1.5) * (3.0 * k + 2.5) /
           (54.0 * (k + 1.0) * (k + 0.5));
}

// log Ai(x) for x >= 9, usable far beyond where Ai itself underflows.
inline double airy_ai_log_right(double x) {
    double zeta = (2.0 / 3.0) * x * std::sqrt(x);
    double mag = 1.0, sum = 1.0;
    for (int k = 0; k < 60; ++k) {
        double next = mag * asym_coeff_ratio(k) / zeta;
        if (next >= mag) break;
        mag = next;
        sum += ((k + 1) % 2 == 1) ? -mag : mag;
        if (mag < 1e-18 * sum) break;
    }
    return -zeta + std::log(sum) - std::log(2.0 * kSqrtPi) - 0.25 * std::log(x);
}

inline double airy_ai_asym_right(double x) {
    return std::exp(airy_ai_log_right(x));
}

inline double airy_ai_prime_asym_right(double x) {
    double zeta = (2.0 / 3.0) * x * std::sqrt(x);
    double c = 1.0, zp = 1.0, sum = 1.0, prev = 1e300;
    for (int k = 1; k <= 60; ++k) {
        c *= asym_coeff_ratio(k - 1);
        zp /= zeta;
        if (c * zp >= prev) break;
        prev = c * zp;
        double v = (6.0 * k + 1.0) / (1.0 - 6.0 * k) * c;
        sum += ((k % 2 == 1) ? -1.0 : 1.0) * v * zp;
        if (c * zp < 1e-18 * std::fabs(sum)) break;
    }
    return -std::exp(-zeta) * std::pow(x, 0.25) / (2.0 * kSqrtPi) * sum;
}

// Oscillatory expansions for x <= -9, z = -x, Z = zeta + pi/4:
//   Ai(-z)  = (sin(Z)P - cos(Z)Q) / (sqrt(pi) z^{1/4})
//   Ai'(-z) = -(z^{1/4}/sqrt(pi)) (cos(Z)Pv + sin(Z)Qv)
// where P  = sum_j (-1)^j c_{2j}  zeta^{-2j},   Q  = sum_j (-1)^j c_{2j+1} zeta^{-2j-1}
// and Pv/Qv are the same sums with v_k in place of c_k.
inline void airy_asym_left(double z, double* ai, double* aip) {
    double zeta = (2.0 / 3.0) * z * std::sqrt(z);
    double P = 1.0, Q = 0.0, Pv = 1.0, Qv = 0.0;
    double c = 1.0, zp = 1.0, prev = 1e300;
    for (int k = 1; k <= 40; ++k) {
        c *= asym_coeff_ratio(k - 1);
        zp /= zeta;
        double tc = c * zp;
        if (tc >= prev) break;
        prev = tc;
        double v = (6.0 * k + 1.0) / (1.0 - 6.0 * k) * c;
        double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            P += sign * tc;
            Pv += sign * v * zp;
        } else {
            Q += sign * tc;
            Qv += sign * v * zp;
        }
        if (tc < 1e-19) break;
    }
    double Z = zeta + 0.25 * kPi;
    double s = std::sin(Z), co = std::cos(Z);
    double z4 = std::pow(z, 0.25);
    if (ai) *ai = (s * P - co * Q) / (kSqrtPi * z4);
    if (aip) *aip = -(z4 / kSqrtPi) * (co * Pv + s * Qv);
}

// Unrestricted evaluator used inside kernel quadratures, where arguments run
// beyond the public domain.  Right side underflows gracefully to 0; left side
// the expansion only improves with |x|.
inline double airy_ai_any(double x) {
    if (x >= 9.0) return airy_ai_asym_right(x);
    if (x <= -9.0) {
        double ai;
        airy_asym_left(-x, &ai, nullptr);
        return ai;
    }
    double ai;
    airy_maclaurin(x, &ai, nullptr);
    return ai;
}

inline double airy_ai_prime_any(double x) {
    if (x >= 9.0) return airy_ai_prime_asym_right(x);
    if (x <= -9.0) {
        double aip;
        airy_asym_left(-x, nullptr, &aip);
        return aip;
    }
    double aip;
    airy_maclaurin(x, nullptr, &aip);
    return aip;
}

}  // namespace detail

/// Airy function Ai(x) for x in [-30, 30].  Absolute accuracy ~1e-13 or
/// better over the domain (relative ~1e-13 on the decaying side).
inline double airy_ai(double x) {
    require(x >= -30.0 && x <= 30.0, "airy_ai: x outside [-30, 30]");
    return detail::airy_ai_any(x);
}

/// Derivative Ai'(x) on the same domain.
inline double airy_ai_prime(double x) {
    require(x >= -30.0 && x <= 30.0, "airy_ai_prime: x outside [-30, 30]");
    return detail::airy_ai_prime_any(x);
}

/// Nodes and weights of an n-point quadrature rule.
struct Quadrature {
    std::vector<double> x;
    std::vector<double> w;
};

/// Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on P_n.
inline Quadrature gauss_legendre(int n) {
    require(n >= 1, "gauss_legendre: n must be positive");
    Quadrature q;
    q.x.resize(n);
    q.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) {
                // one polishing step after convergence
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                pp = n * (x * p1 - p0) / (x * x - 1.0);
                break;
            }
        }
        q.x[i] = -x;
        q.x[n - 1 - i] = x;
        q.w[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        q.w[n - 1 - i] = q.w[i];
    }
    if (n % 2 == 1) q.x[n / 2] = 0.0;
    return q;
}

/// Rule mapped from [-1,1] to [a,b].
inline Quadrature mapped_rule(const Quadrature& base, double a, double b) {
    Quadrature q;
    std::size_t n = base.x.size();
    q.x.resize(n);
    q.w.resize(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < n; ++i) {
        q.x[i] = mid + half * base.x[i];
        q.w[i] = half * base.w[i];
    }
    return q;
}

namespace detail {

// Panelized quadrature grid on [lo, hi] for integrands containing Airy
// factors whose most negative argument at position t is t + arg_shift.
// Panels shrink to track the local Airy oscillation wavelength pi/sqrt(-arg);
// smooth (arg > 0) regions use wide panels.
inline Quadrature airy_panel_grid(double lo, double hi, double arg_shift) {
    static thread_local Quadrature base8 = gauss_legendre(8);
    Quadrature grid;
    double t = lo;
    while (t < hi) {
        double arg = t + arg_shift;
        double width;
        if (arg >= 1.0) {
            width = 2.0;
        } else {
            double z = std::fmax(1.0, -arg);
            width = std::fmin(0.25, 0.5 * kPi / std::sqrt(z));
        }
        double end = std::fmin(hi, t + width);
        Quadrature panel = mapped_rule(base8, t, end);
        grid.x.insert(grid.x.end(), panel.x.begin(), panel.x.end());
        grid.w.insert(grid.w.end(), panel.w.begin(), panel.w.end());
        t = end;
    }
    return grid;
}

}  // namespace detail

/// Exponentially weighted Airy product tail integral
///   I(x, y, c, a) = \int_c^\infty e^{a t} Ai(x + t) Ai(y + t) dt,  a <= 0.
/// Truncated where the integrand is provably below 1e-18 of scale.
inline double airy_tail_integral(double x, double y, double c, double a) {
    require(a <= 0.0, "airy_tail_integral: need a <= 0 for convergence");
    double m = std::fmin(x, y);
    // Past t0 both Airy arguments exceed 40: the product is < 1e-120.
    double hi = std::fmax(c, 40.0 - m);
    Quadrature grid = detail::airy_panel_grid(c, hi, m);
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.x.size(); ++i) {
        double t = grid.x[i];
        sum += grid.w[i] * std::exp(a * t) * detail::airy_ai_any(x + t) *
               detail::airy_ai_any(y + t);
    }
    return sum;
}

}  // namespace tasep

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace tasep {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrtPi = 1.77245385090551602730;

// Throwing assert for argument validation in library entry points.
inline void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

inline double sq(double x) { return x * x; }
inline double cube(double x) { return x * x * x; }

}  // namespace tasep

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <iosfwd>

#include "escset/exact.hpp"

namespace escset {

/// A point of the plane. Both coordinates are finite; constructing a point
/// from a NaN or infinity throws ResourceError (in practice this means an
/// orbit overflowed the range of a double).
class Point2 {
public:
    Point2() = default;
    Point2(double x, double y);

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }
    double norm() const noexcept { return std::hypot(x_, y_); }

    /// Bit-for-bit equality (distinguishes -0.0 from 0.0).
    friend bool same_bits(const Point2& a, const Point2& b) noexcept {
        return std::bit_cast<std::uint64_t>(a.x_) == std::bit_cast<std::uint64_t>(b.x_)
            && std::bit_cast<std::uint64_t>(a.y_) == std::bit_cast<std::uint64_t>(b.y_);
    }
    friend bool operator==(const Point2& a, const Point2& b) noexcept { return a.x_ == b.x_ && a.y_ == b.y_; }

    friend Point2 operator+(const Point2& a, const Point2& b) { return {a.x_ + b.x_, a.y_ + b.y_}; }
    friend Point2 operator-(const Point2& a, const Point2& b) { return {a.x_ - b.x_, a.y_ - b.y_}; }
    friend Point2 operator*(double s, const Point2& a) { return {s * a.x_, s * a.y_}; }

private:
    double x_ = 0.0;
    double y_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, const Point2& p);

inline double distance(const Point2& a, const Point2& b) { return std::hypot(a.x() - b.x(), a.y() - b.y()); }

/// Axis-aligned window [x_min, x_max] x [y_min, y_max] of the plane.
struct Window {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    bool contains(const Point2& p) const {
        return p.x() >= x_min && p.x() <= x_max && p.y() >= y_min && p.y() <= y_max;
    }
    bool degenerate() const { return !(x_max > x_min) || !(y_max > y_min); }
};

// Uniform per-state helpers so orbit code is generic over 1D exact and 2D float.
inline double state_norm(const Point2& p) { return p.norm(); }
inline double state_norm(const ExactScalar& x) { return std::fabs(x.to_double()); }
inline bool state_equal(const Point2& a, const Point2& b) { return same_bits(a, b); }
inline bool state_equal(const ExactScalar& a, const ExactScalar& b) { return a == b; }

} // namespace escset

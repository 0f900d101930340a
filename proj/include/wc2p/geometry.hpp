/** \file geometry.hpp
 * \brief Small 2-D vector type used throughout the solver.
 */
#ifndef WC2P_GEOMETRY_HPP
#define WC2P_GEOMETRY_HPP

#include <cmath>

namespace wc2p {

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2 operator-() const { return {-x, -y}; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::sqrt(x * x + y * y); }
    double norm2() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// Perpendicular obtained by rotating v clockwise (right-hand normal of a ccw edge).
inline Vec2 perp_cw(const Vec2& v) { return {v.y, -v.x}; }

} // namespace wc2p

#endif

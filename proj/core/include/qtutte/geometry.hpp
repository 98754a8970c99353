#pragma once

#include <cstddef>
#include <vector>

namespace qtutte {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }

double dist2(Vec2 a, Vec2 b);

/// Twice the signed area of triangle (a, b, c); positive for a counterclockwise turn.
double orientation_value(Vec2 a, Vec2 b, Vec2 c);

/// Collinearity epsilon shared by every orientation-based predicate.
inline constexpr double kCollinearEps = 1e-12;

/// -1 clockwise, 0 collinear (within kCollinearEps), +1 counterclockwise.
int orientation(Vec2 a, Vec2 b, Vec2 c);

/// True when p lies on the closed segment [a, b]; assumes a, b, p collinear.
bool on_segment(Vec2 a, Vec2 b, Vec2 p);

/// Closed-segment intersection test on [p1,p2] x [q1,q2], degenerate contacts
/// included. Callers exclude shared endpoints before asking.
bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2);

/// Strictly-inside circumcircle test for triangle (a, b, c) and query p.
/// Orientation of the triangle is normalized internally; boundary points
/// (cocircular) report false.
bool in_circumcircle(Vec2 a, Vec2 b, Vec2 c, Vec2 p);

/// Indices of the convex hull in counterclockwise order (monotone chain).
/// Collinear boundary points are dropped.
std::vector<std::size_t> convex_hull(const std::vector<Vec2>& points);

} // namespace qtutte

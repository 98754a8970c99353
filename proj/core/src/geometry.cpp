#include "qtutte/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace qtutte {

double dist2(Vec2 a, Vec2 b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

double orientation_value(Vec2 a, Vec2 b, Vec2 c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

int orientation(Vec2 a, Vec2 b, Vec2 c) {
    const double v = orientation_value(a, b, c);
    if (v > kCollinearEps) return 1;
    if (v < -kCollinearEps) return -1;
    return 0;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
    return std::min(a.x, b.x) - kCollinearEps <= p.x && p.x <= std::max(a.x, b.x) + kCollinearEps &&
           std::min(a.y, b.y) - kCollinearEps <= p.y && p.y <= std::max(a.y, b.y) + kCollinearEps;
}

bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);

    if (o1 != o2 && o3 != o4) return true; // proper crossing

    // degenerate contacts: an endpoint on the other closed segment
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, p2, q2)) return true;
    if (o3 == 0 && on_segment(q1, q2, p1)) return true;
    if (o4 == 0 && on_segment(q1, q2, p2)) return true;
    return false;
}

bool in_circumcircle(Vec2 a, Vec2 b, Vec2 c, Vec2 p) {
    // incircle determinant, sign-normalized so the triangle orientation does not matter
    const double orient = orientation_value(a, b, c);

    const double ax = a.x - p.x, ay = a.y - p.y;
    const double bx = b.x - p.x, by = b.y - p.y;
    const double cx = c.x - p.x, cy = c.y - p.y;
    const double det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
                       (bx * bx + by * by) * (ax * cy - cx * ay) +
                       (cx * cx + cy * cy) * (ax * by - bx * ay);

    const double signed_det = orient < 0.0 ? -det : det;
    return signed_det > kCollinearEps;
}

std::vector<std::size_t> convex_hull(const std::vector<Vec2>& points) {
    const std::size_t n = points.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (points[i].x != points[j].x) return points[i].x < points[j].x;
        return points[i].y < points[j].y;
    });
    if (n < 3) return order;

    std::vector<std::size_t> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t idx = 0; idx < n; ++idx) { // lower chain
        const std::size_t i = order[idx];
        while (k >= 2 && orientation_value(points[hull[k - 2]], points[hull[k - 1]], points[i]) <= kCollinearEps)
            --k;
        hull[k++] = i;
    }
    for (std::size_t idx = n - 1, lower = k + 1; idx-- > 0;) { // upper chain
        const std::size_t i = order[idx];
        while (k >= lower && orientation_value(points[hull[k - 2]], points[hull[k - 1]], points[i]) <= kCollinearEps)
            --k;
        hull[k++] = i;
    }
    hull.resize(k - 1);
    return hull;
}

} // namespace qtutte

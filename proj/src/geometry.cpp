#include "pmin/geometry.hpp"

#include <numbers>

namespace pmin {

Line2 Line2::canonical(double angle, double offset) {
    const double pi = std::numbers::pi;
    double a = std::fmod(angle, 2 * pi);
    if (a < 0) a += 2 * pi;
    if (a >= pi) {
        a -= pi;
        offset = -offset;
    }
    return {a, offset};
}

Plane3 contact_plane_at(const Point3& p) {
    Vec3 n{-p.y, p.x, 1.0};
    return Plane3::make(n, dot(n, p));
}

double signed_polygon_area(std::span<const Vec2> vertices) {
    if (vertices.size() < 3) throw Error("polygon area needs at least 3 vertices");
    double twice = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vec2& a = vertices[i];
        const Vec2& b = vertices[(i + 1) % vertices.size()];
        twice += a.x * b.y - b.x * a.y;
    }
    return twice / 2.0;
}

double signed_polygon_area(const std::vector<Vec2>& vertices) {
    return signed_polygon_area(std::span<const Vec2>(vertices));
}

double line_origin_distance(const Line3& line) {
    const Vec3& p = line.point;
    const Vec3& d = line.direction;
    Vec3 perp = p - d * dot(p, d);
    return norm(perp);
}

}  // namespace pmin

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "pmin/errors.hpp"

namespace pmin {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double k) const { return {x * k, y * k, z * k}; }
    Vec3 operator/(double k) const { return {x / k, y / k, z / k}; }
};

using Point3 = Vec3;

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
    double n = norm(v);
    if (n == 0.0) throw Error("cannot normalize the zero vector");
    return v / n;
}

/// Straight line in space, direction held at unit length.
struct Line3 {
    Point3 point;
    Vec3 direction;

    static Line3 through(const Point3& p, const Vec3& dir) { return {p, normalized(dir)}; }
};

/// Plane with unit normal: { p : dot(normal, p) = offset }.
struct Plane3 {
    Vec3 normal;
    double offset = 0.0;

    static Plane3 make(const Vec3& n, double offset) {
        double len = norm(n);
        if (len == 0.0) throw Error("plane normal cannot be zero");
        return {n / len, offset / len};
    }

    double signed_distance(const Point3& p) const { return dot(normal, p) - offset; }
};

/// Projected ruling line in Hesse normal form:
/// { (x, y) : x cos(angle) + y sin(angle) = offset }, canonicalized to
/// angle in [0, pi) by identifying (angle + pi, -offset) with (angle, offset).
struct Line2 {
    double angle = 0.0;
    double offset = 0.0;

    static Line2 canonical(double angle, double offset);

    /// Signed distance of (x, y) from the line.
    double residual(const Vec2& p) const {
        return p.x * std::cos(angle) + p.y * std::sin(angle) - offset;
    }
};

/// Contact form Theta = dz + x dy - y dx evaluated on the tangent vector v
/// at the point p. Exactly linear in v.
inline double contact_form(const Point3& p, const Vec3& v) {
    return v.z + p.x * v.y - p.y * v.x;
}

/// The plane annihilated by the contact form at p; normal is proportional
/// to (-p.y, p.x, 1).
Plane3 contact_plane_at(const Point3& p);

/// Shoelace signed area of the polygon with the given vertex order;
/// positive for counterclockwise orientation. Needs at least 3 vertices.
double signed_polygon_area(std::span<const Vec2> vertices);
double signed_polygon_area(const std::vector<Vec2>& vertices);

/// Euclidean distance between the line and the origin.
double line_origin_distance(const Line3& line);

}  // namespace pmin

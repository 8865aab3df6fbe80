#pragma once

#include "pmin/geometry.hpp"
#include "pmin/profile.hpp"

namespace pmin {

/// Per-(s, t) evaluation bundle of the ruled parametrization
///   x = s sin(theta) + alpha
///   y = -s cos(theta) + beta
///   z = s (beta sin(theta) + alpha cos(theta)) + gamma
/// together with the decomposition
///   delta = alpha cos(theta) + beta sin(theta)
///   xi    = alpha sin(theta) - beta cos(theta)
/// and the intermediates
///   A = (s + xi) theta' + delta'
///   B = xi' - delta theta'.
/// `cross` holds the closed-form components of d_s x d_t:
///   ( -cos(theta) (s delta' + gamma' - delta B) - A delta sin(theta),
///     -sin(theta) (s delta' + gamma' - delta B) + A delta cos(theta),
///     A ).
struct RulingFrame {
    double s = 0.0;
    double t = 0.0;
    Point3 position;
    Vec3 d_s;
    Vec3 d_t;
    Vec3 cross;
    double theta = 0.0, theta_d = 0.0;
    double delta = 0.0, delta_d = 0.0;
    double xi = 0.0, xi_d = 0.0;
    double gamma = 0.0, gamma_d = 0.0;
    double A = 0.0;
    double B = 0.0;
};

/// Projected ruling: the plane line x cos(theta) + y sin(theta) = delta at
/// parameter t, plus the lift plane z = beta x - alpha y + gamma that turns
/// it into the space ruling.
struct ProjectedRuling {
    double t = 0.0;
    Line2 line2;  // canonicalized
    // Raw profile values at t (not canonicalized); the lift reads
    // z = beta * x - alpha * y + gamma.
    double theta = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double xi = 0.0;

    double lift_height(const Vec2& p) const { return beta * p.x - alpha * p.y + gamma; }
};

struct DeltaXi {
    double delta = 0.0;
    double xi = 0.0;
    double delta_d = 0.0;
    double xi_d = 0.0;
};

Point3 evaluate(const SurfaceProfile& profile, double s, double t);

RulingFrame frame(const SurfaceProfile& profile, double s, double t);

/// (delta, xi) and their t-derivatives via the product/chain rule on the
/// exact profile derivatives.
DeltaXi decompose(const SurfaceProfile& profile, double t);

/// Inverse of the decomposition:
///   alpha = delta cos(theta) + xi sin(theta)
///   beta  = delta sin(theta) - xi cos(theta).
Vec2 recompose(double theta, double delta, double xi);

ProjectedRuling projected_ruling(const SurfaceProfile& profile, double t);

/// The space ruling at t: through evaluate(profile, 0, t) with normalized
/// direction (sin(theta), -cos(theta), delta).
Line3 ruling_line3(const SurfaceProfile& profile, double t);

}  // namespace pmin

#include "pmin/ruled_surface.hpp"

#include <cmath>

namespace pmin {

Point3 evaluate(const SurfaceProfile& profile, double s, double t) {
    double th = profile.theta.value(t);
    double a = profile.alpha.value(t);
    double b = profile.beta.value(t);
    double g = profile.gamma.value(t);
    double sin_th = std::sin(th);
    double cos_th = std::cos(th);
    return {s * sin_th + a, -s * cos_th + b, s * (b * sin_th + a * cos_th) + g};
}

DeltaXi decompose(const SurfaceProfile& profile, double t) {
    auto [th, th_d] = profile.theta.eval_with_derivative(t);
    auto [a, a_d] = profile.alpha.eval_with_derivative(t);
    auto [b, b_d] = profile.beta.eval_with_derivative(t);
    double sin_th = std::sin(th);
    double cos_th = std::cos(th);
    DeltaXi r;
    r.delta = a * cos_th + b * sin_th;
    r.xi = a * sin_th - b * cos_th;
    r.delta_d = a_d * cos_th + b_d * sin_th + th_d * (b * cos_th - a * sin_th);
    r.xi_d = a_d * sin_th - b_d * cos_th + th_d * (a * cos_th + b * sin_th);
    return r;
}

Vec2 recompose(double theta, double delta, double xi) {
    double sin_th = std::sin(theta);
    double cos_th = std::cos(theta);
    return {delta * cos_th + xi * sin_th, delta * sin_th - xi * cos_th};
}

RulingFrame frame(const SurfaceProfile& profile, double s, double t) {
    auto [th, th_d] = profile.theta.eval_with_derivative(t);
    auto [a, a_d] = profile.alpha.eval_with_derivative(t);
    auto [b, b_d] = profile.beta.eval_with_derivative(t);
    auto [g, g_d] = profile.gamma.eval_with_derivative(t);
    double sin_th = std::sin(th);
    double cos_th = std::cos(th);

    RulingFrame f;
    f.s = s;
    f.t = t;
    f.theta = th;
    f.theta_d = th_d;
    f.gamma = g;
    f.gamma_d = g_d;
    f.delta = a * cos_th + b * sin_th;
    f.xi = a * sin_th - b * cos_th;
    f.delta_d = a_d * cos_th + b_d * sin_th + th_d * (b * cos_th - a * sin_th);
    f.xi_d = a_d * sin_th - b_d * cos_th + th_d * (a * cos_th + b * sin_th);
    f.A = (s + f.xi) * th_d + f.delta_d;
    f.B = f.xi_d - f.delta * th_d;

    f.position = {s * sin_th + a, -s * cos_th + b, s * f.delta + g};
    f.d_s = {sin_th, -cos_th, f.delta};
    double m = s * f.delta_d + g_d;
    f.d_t = {f.A * cos_th + f.B * sin_th, f.A * sin_th - f.B * cos_th, m};
    double m_b = m - f.delta * f.B;  // s delta' + gamma' - delta B
    f.cross = {-cos_th * m_b - f.A * f.delta * sin_th,
               -sin_th * m_b + f.A * f.delta * cos_th,
               f.A};
    return f;
}

ProjectedRuling projected_ruling(const SurfaceProfile& profile, double t) {
    ProjectedRuling r;
    r.t = t;
    r.theta = profile.theta.value(t);
    r.alpha = profile.alpha.value(t);
    r.beta = profile.beta.value(t);
    r.gamma = profile.gamma.value(t);
    double sin_th = std::sin(r.theta);
    double cos_th = std::cos(r.theta);
    r.delta = r.alpha * cos_th + r.beta * sin_th;
    r.xi = r.alpha * sin_th - r.beta * cos_th;
    r.line2 = Line2::canonical(r.theta, r.delta);
    return r;
}

Line3 ruling_line3(const SurfaceProfile& profile, double t) {
    double th = profile.theta.value(t);
    double a = profile.alpha.value(t);
    double b = profile.beta.value(t);
    double sin_th = std::sin(th);
    double cos_th = std::cos(th);
    double delta = a * cos_th + b * sin_th;
    return Line3::through(evaluate(profile, 0.0, t), Vec3{sin_th, -cos_th, delta});
}

}  // namespace pmin

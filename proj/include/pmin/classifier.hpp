#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pmin/analyzer.hpp"

namespace pmin {

/// Numeric evidence attached to a classification.
struct Certificate {
    /// Max |unit tangent . family normal| over sampled rulings.
    double direction_residual = 0.0;
    /// Tilted case: max |x0 cos(theta) + y0 sin(theta) - delta| over samples
    /// (every projected ruling must pass through (x0, y0)).
    double common_point_residual = 0.0;
    /// Max residual of the recovered canonical form on a test grid.
    double surface_agreement = 0.0;
    /// Range of the plane-offset map over the declared t range.
    double offset_min = 0.0;
    double offset_max = 0.0;
    /// Min |d offset / dt| over the declared t range.
    double offset_derivative_min = 0.0;
    /// Offsets diverge to -inf and +inf on the extended parameter tails.
    bool offsets_diverge = false;
    bool tails_probed = false;
    std::string note;
};

struct Classification {
    enum class Kind { ContactPlane, HelicoidVertical, HelicoidTilted, WeakHelicoid, NonHelicoid };

    Kind kind = Kind::NonHelicoid;

    // ContactPlane
    Point3 through;

    // HelicoidVertical: graph z = -ab x^2 + (a^2-b^2) xy + ab y^2 + g(-bx + ay)
    double a = 0.0;
    double b = 0.0;
    std::optional<ProfileFunction> g;

    // HelicoidTilted: (x - x0) cos(theta(t)) + (y - y0) sin(theta(t)) = 0
    // with t = z - y0 x + x0 y
    double x0 = 0.0;
    double y0 = 0.0;
    std::optional<ProfileFunction> theta;

    // WeakHelicoid: rulings lie in parallel planes with this unit normal,
    // but the planes do not sweep all of space.
    Vec3 plane_normal;

    /// False when the immersion pre-check found degenerate points; the
    /// classification is still attempted.
    bool immersed = true;

    Certificate certificate;
};

struct ClassifyOptions {
    std::size_t direction_samples = 64;
    std::size_t recovery_samples = 4096;
    std::size_t agreement_grid = 33;
    Tolerances tol;
};

/// Result of the coplanar-ruling test with its degeneracy diagnostics.
struct CoplanarFamily {
    std::optional<Vec3> normal;        // unit normal when rulings are coplanar
    bool parallel_directions = false;  // all tangent directions parallel
    double direction_residual = 0.0;
};

CoplanarFamily coplanar_ruling_family(const SurfaceProfile& profile,
                                      const std::vector<double>& t_samples);

/// Returns the common unit normal when all sampled ruling tangents lie in
/// parallel planes (max |T^ . n^| < 1e-8), otherwise nullopt. When all
/// tangent directions are parallel the normal is recovered by plane-fitting
/// through the ruling base points.
std::optional<Vec3> is_ruling_coplanar_family(const SurfaceProfile& profile,
                                              const std::vector<double>& t_samples);

Classification classify(const SurfaceProfile& profile, const ClassifyOptions& opts = {});

/// Profile of the graph z = -ab x^2 + (a^2 - b^2) xy + ab y^2 + g(-bx + ay).
/// Requires a^2 + b^2 = 1 within 1e-9 (NormalizationError otherwise).
SurfaceProfile build_vertical(double a, double b, const ProfileFunction& g,
                              Interval t_range = {-10.0, 10.0},
                              Interval s_range = {-10.0, 10.0});

/// Profile of (x - x0) cos(theta(t)) + (y - y0) sin(theta(t)) = 0 with
/// t = z - y0 x + x0 y (alpha = x0, beta = y0, gamma = t).
SurfaceProfile build_tilted(double x0, double y0, const ProfileFunction& theta,
                            Interval t_range = {-10.0, 10.0},
                            Interval s_range = {-10.0, 10.0});

struct SingularFreeResult {
    bool singular_free = true;
    /// Witness of failure: theta'(t) < 0 there, and the rulings at that t
    /// are singular at s = +/- witness_s.
    std::optional<double> witness_t;
    std::optional<double> witness_s;
    double min_theta_d = 0.0;
};

/// A tilted-form surface has no singular points iff theta' >= 0 everywhere
/// on the range (sampled densely, minimum refined by ternary search).
SingularFreeResult singular_free_tilted(const ProfileFunction& theta, Interval t_range);

}  // namespace pmin

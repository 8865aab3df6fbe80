#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pmin/ruled_surface.hpp"
#include "pmin/tolerances.hpp"

namespace pmin {

struct GridSpec {
    std::size_t ns = 64;
    std::size_t nt = 64;
    Interval s_range;
    Interval t_range;

    static GridSpec from_profile(const SurfaceProfile& profile, std::size_t ns = 64,
                                 std::size_t nt = 64);

    /// Same grid with the s interval scaled symmetrically about its center.
    GridSpec expanded_s(double factor) const;

    double s_at(std::size_t i) const { return s_range.lerp(double(i) / double(ns - 1)); }
    double t_at(std::size_t j) const { return t_range.lerp(double(j) / double(nt - 1)); }
};

/// Result of intersecting two projected rulings.
///
/// Cross: the projected lines meet at one point (x, y); z1/z2 are the
/// heights of the two space rulings above it and gap = z2 - z1.
/// Coincident: same projected line; gamma_gap is the constant height offset
/// between the two parallel space rulings.
struct LineIntersection {
    enum class Kind { Cross, ParallelDistinct, Coincident };
    Kind kind = Kind::ParallelDistinct;
    double x = 0.0, y = 0.0;
    double z1 = 0.0, z2 = 0.0;
    double gap = 0.0;        // Cross only
    double gamma_gap = 0.0;  // Coincident only
};

/// First-order degeneracy residuals at a frame:
///   r_a = (s + xi) theta' + delta'
///   r_b = s delta' + gamma' - delta (xi' - delta theta')
/// The map fails to be an immersion at (s, t) iff both vanish.
std::pair<double, double> immersion_residuals(const RulingFrame& f);

/// Left side of the singular-point criterion
///   [(s + xi)^2 + delta^2] theta' + (2s + xi) delta' + gamma' - delta xi'.
/// The point is singular iff this vanishes (tangent plane equals the
/// contact plane there).
double singular_residual(const RulingFrame& f);

struct SingularPoint {
    double s = 0.0;
    double t = 0.0;
    double residual = 0.0;
};

struct SingularScan {
    std::vector<SingularPoint> points;
    std::vector<std::string> warnings;  // grid-too-coarse diagnostics
};

/// Scans the grid for sign changes of the singular residual along both
/// parameter directions, refines each bracket by bisection to
/// |residual| < tol.singular, and keeps points confirmed by the parallelism
/// oracle |cross x (-y, x, 1)| < tol.parallelism_oracle * |cross|.
SingularScan scan_singular_set(const SurfaceProfile& profile, const GridSpec& grid,
                               const Tolerances& tol = {});

LineIntersection intersect_rulings(const ProjectedRuling& a, const ProjectedRuling& b,
                                   const Tolerances& tol = {});

/// Height gap z2 - z1 between two rulings over the intersection of their
/// projections, computed by the reduced formula
///   (2 d1 d2 - (d1^2 + d2^2) cos(th2 - th1)) / sin(th2 - th1) + g2 - g1
/// after eliminating xi (s-reparametrization; gamma is shifted by
/// -xi * delta, which leaves the space rulings unchanged).
double height_gap_reduced(const SurfaceProfile& profile, double t1, double t2);

struct InjectivityViolation {
    enum class Kind { CrossGapZero, CoincidentSameHeight };
    Kind kind = Kind::CrossGapZero;
    double t1 = 0.0;
    double t2 = 0.0;
    double value = 0.0;  // the vanishing gap
};

enum class GapPath { General, Reduced };

/// Tests all sample pairs; a pair violates injectivity when its projected
/// lines cross with |gap| < tol.gap, or coincide with |gamma_gap| < tol.gap.
std::vector<InjectivityViolation> injectivity_scan(const SurfaceProfile& profile,
                                                   const std::vector<double>& t_samples,
                                                   GapPath path = GapPath::General,
                                                   const Tolerances& tol = {});

struct AreaIdentityResult {
    double lhs = 0.0;  // (z1-z2)(P) + (z2-z3)(Q) + (z3-z1)(R)
    double rhs = 0.0;  // 2 * signed area of triangle (P, R, Q)
    Vec2 p, q, r;
};

/// The sum of ruling height differences around a projected triangle equals
/// twice its (signed) area. Throws DegenerateTriple when a pair fails to
/// cross or the vertices collapse.
AreaIdentityResult area_identity(const SurfaceProfile& profile, double t1, double t2,
                                 double t3, const Tolerances& tol = {});

enum class Properness { Proper, NotProper, Inconclusive };

struct PropernessReport {
    Properness verdict = Properness::Inconclusive;
    std::vector<std::pair<double, double>> evidence;  // (t, r_t), both tails
    std::string note;
};

/// Probes the ruling-origin distance r_t on geometrically expanding |t|.
/// Proper needs r_t to climb a geometric threshold sequence on both tails;
/// NotProper needs r_t to stay bounded while |t| grows by >= 1e3. Annulus
/// profiles are proper unconditionally.
PropernessReport properness_check(const SurfaceProfile& profile, int doublings = 12);

/// Looks for nearby rulings meeting at a common space point (the projected
/// lines cross with vanishing height gap). Confirmed meetings mean the
/// surface is the contact plane through the returned point.
std::optional<Point3> ruling_intersection_probe(const SurfaceProfile& profile,
                                                const std::vector<double>& t_samples,
                                                const Tolerances& tol = {});

struct ContainmentReport {
    enum class Kind { ContainedAbove, ContainedBelow, Straddles };
    Kind kind = Kind::Straddles;
    double min_distance = 0.0;
    double max_distance = 0.0;
    std::vector<Point3> witnesses_above;
    std::vector<Point3> witnesses_below;
    /// Set when the caller supplies the classification cross-check: contained
    /// but not classified as a contact plane.
    bool theorem_d_violation = false;
};

/// Classifies sampled surface points against a contact plane. The upper
/// halfspace is the side containing (0, 0, +inf). Throws InvalidPlane when
/// the plane is not a contact plane of any point (vertical normal).
/// `classified_contact_plane`, when known, enables the halfspace-theorem
/// cross-check: a contained surface must be a contact plane.
ContainmentReport halfspace_probe(const SurfaceProfile& profile, const Plane3& plane,
                                  const GridSpec& grid, const Tolerances& tol = {},
                                  std::optional<bool> classified_contact_plane = std::nullopt);

struct NonImmersedPoint {
    double s = 0.0;
    double t = 0.0;
    double r_a = 0.0;
    double r_b = 0.0;
    bool whole_ruling = false;  // residuals vanish for every s at this t
};

/// Finds points where both immersion residuals vanish: along each t the
/// first residual is linear in s, so its root line is followed and the
/// second residual is bisected along it.
std::vector<NonImmersedPoint> scan_non_immersed(const SurfaceProfile& profile,
                                                const GridSpec& grid,
                                                const Tolerances& tol = {});

struct AnalysisReport {
    GridSpec grid;
    std::vector<NonImmersedPoint> non_immersed_points;
    std::vector<SingularPoint> singular_points;
    std::vector<InjectivityViolation> injectivity_violations;
    std::size_t injectivity_pairs_tested = 0;
    PropernessReport properness;
    std::optional<Point3> degenerate_contact_plane;
    std::vector<std::string> warnings;
};

AnalysisReport analyze(const SurfaceProfile& profile, const GridSpec& grid,
                       const Tolerances& tol = {});

}  // namespace pmin

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pmin/classifier.hpp"

namespace pmin {

/// Height function over an (x, y) rectangle with a base grid spacing.
/// Closed form for the vertical canonical family; implicit root-solve on
/// the tilted one. u may return NaN where no branch is found; such nodes
/// are excluded from residual grids.
struct GraphPatch {
    std::function<double(double, double)> u;
    Interval x_range;
    Interval y_range;
    double h = 1.0 / 32.0;

    static GraphPatch from_function(std::function<double(double, double)> u, Interval x_range,
                                    Interval y_range, double h);

    /// u = -ab x^2 + (a^2 - b^2) xy + ab y^2 + g(-bx + ay).
    static GraphPatch from_vertical(double a, double b, const ProfileFunction& g,
                                    Interval x_range, Interval y_range, double h);

    /// Solves (x - x0) cos(theta(t)) + (y - y0) sin(theta(t)) = 0 with
    /// t = z - y0 x + x0 y for z in the given window: coarse sign scan,
    /// bisection, then a Newton polish to |F| < 1e-11. Nodes with several
    /// roots take the one nearest the window midpoint.
    static GraphPatch from_tilted(double x0, double y0, const ProfileFunction& theta,
                                  Interval x_range, Interval y_range, double h, Interval z_window);
};

struct ResidualReport {
    double h = 0.0;
    double max_residual = 0.0;                // at spacing h
    std::optional<double> max_residual_h2;    // at h/2
    std::optional<double> max_residual_h4;    // at h/4
    std::optional<double> ratio_1;            // res(h) / res(h/2)
    std::optional<double> ratio_2;            // res(h/2) / res(h/4)
    std::size_t total_nodes = 0;              // at spacing h
    std::size_t excluded_nodes = 0;           // at spacing h
    bool exact_zero = false;
    /// Residual field (x, y, residual) on the base grid, for CSV export.
    std::vector<std::array<double, 3>> field;
};

/// Max |Theta(d_s X)| over an ns x nt sample grid; the ruling tangents of
/// every profile are Legendrian, so this is an exact identity (< 1e-12).
double legendrian_residual(const SurfaceProfile& profile, std::size_t ns = 100,
                           std::size_t nt = 100);

/// Centered-difference divergence of (grad u + F)/|grad u + F| with
/// F = (-y, x), measured in the max norm on the retained grid at spacings
/// h, h/2, h/4. Nodes near the singular set (|grad u + F| < tol.sing_exclusion,
/// radius 10h) and stencils straddling a unit-field jump are excluded.
/// Throws SingularContamination when more than half of a grid is excluded.
ResidualReport pde_residual(const GraphPatch& patch, const Tolerances& tol = {},
                            bool capture_field = false);

struct GoldenAssertion {
    std::string example;
    std::string check;
    bool passed = false;
    double value = 0.0;
    std::string detail;
};

struct GoldenReport {
    std::vector<GoldenAssertion> entries;
    bool all_passed() const;
};

/// Runs the bundled example suite end-to-end: implicit-equation membership,
/// height-gap signs, classification, singular sets, properness, Legendrian
/// and PDE residuals. Profiles are loaded from `profiles_dir`.
GoldenReport golden_examples(const std::string& profiles_dir);

}  // namespace pmin

#pragma once

namespace pmin {

/// Numeric thresholds shared across the analysis passes. Every member has a
/// documented default; the CLI exposes the ones users commonly need to touch.
struct Tolerances {
    /// |sin(theta2 - theta1)| below this switches a projected-line pair to
    /// the parallel branch (the 1/sin intersection formulas blow up there).
    double parallel = 1e-9;

    /// Refined singular-set roots must satisfy |residual| below this.
    double singular = 1e-10;

    /// Relative threshold for the parallelism oracle
    /// |cross x (-y, x, 1)| < parallelism_oracle * |cross|.
    double parallelism_oracle = 1e-6;

    /// Height gaps (and coincident-line height offsets) below this count as
    /// injectivity violations.
    double gap = 1e-9;

    /// A pair of nearby rulings whose 3-D lines pass within this height gap
    /// counts as a local meeting point (contact-plane probe).
    double meet = 1e-9;

    /// The Legendrian identity must hold to this absolute bound.
    double legendrian = 1e-12;

    /// Non-immersed points need both first-order residuals below this.
    double immersion = 1e-9;

    /// |grad u + F| below this marks a graph node as singular.
    double sing_exclusion = 1e-6;
};

}  // namespace pmin

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pmin/expression.hpp"

namespace pmin {

/// Scalar function of t with exact first derivative. Backed either by an
/// expression tree (symbolic derivative) or by sorted samples interpolated
/// with local cubics (derivative of the interpolant). Immutable after
/// construction; evaluation is pure and thread-safe.
class ProfileFunction {
public:
    /// Parse from the expression grammar. Throws SyntaxError.
    static ProfileFunction parse(const std::string& src);

    static ProfileFunction from_tree(ExprPtr body);
    static ProfileFunction constant(double c);

    /// Tabulated body. Samples are sorted by t; duplicate abscissae are
    /// rejected. Needs at least two samples; with fewer than four the
    /// interpolation order degrades gracefully (linear/quadratic).
    static ProfileFunction tabulated(std::vector<std::pair<double, double>> samples);

    double value(double t) const;
    double derivative(double t) const;
    std::pair<double, double> eval_with_derivative(double t) const;

    bool is_tabulated() const { return !ts_.empty(); }

    /// Expression source (printed tree) for expression bodies; empty for
    /// tabulated ones.
    std::string source() const;

    const std::vector<double>& table_ts() const { return ts_; }
    const std::vector<double>& table_fs() const { return fs_; }
    const ExprPtr& tree() const { return body_; }

private:
    ProfileFunction() = default;

    ExprPtr body_;
    ExprPtr dbody_;
    std::vector<double> ts_;
    std::vector<double> fs_;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
    double lerp(double u) const { return lo + (hi - lo) * u; }
};

enum class Topology { Band, Annulus };

/// The full data of a ruled surface: profile quadruple and parameter ranges.
/// Annulus topology requires t-periodic profiles (values and derivatives
/// matching at the range ends).
struct SurfaceProfile {
    ProfileFunction theta;
    ProfileFunction alpha;
    ProfileFunction beta;
    ProfileFunction gamma;
    Interval t_range;
    Interval s_range;
    Topology topology = Topology::Band;

    /// Checks the range and periodicity invariants; throws Error on failure.
    void validate() const;
};

/// Builds (alpha, beta) from (theta, delta, xi):
///   alpha = delta cos(theta) + xi sin(theta)
///   beta  = delta sin(theta) - xi cos(theta)
/// Expression inputs compose symbolically; tabulated inputs are sampled
/// densely over t_range.
std::pair<ProfileFunction, ProfileFunction> alpha_beta_from_delta_xi(
    const ProfileFunction& theta, const ProfileFunction& delta,
    const ProfileFunction& xi, const Interval& t_range);

}  // namespace pmin

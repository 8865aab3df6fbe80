#include "pmin/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pmin/parallel.hpp"

namespace pmin {

GridSpec GridSpec::from_profile(const SurfaceProfile& profile, std::size_t ns, std::size_t nt) {
    GridSpec g;
    g.ns = std::max<std::size_t>(2, ns);
    g.nt = std::max<std::size_t>(2, nt);
    g.s_range = profile.s_range;
    g.t_range = profile.t_range;
    return g;
}

GridSpec GridSpec::expanded_s(double factor) const {
    GridSpec g = *this;
    double mid = 0.5 * (s_range.lo + s_range.hi);
    double half = 0.5 * (s_range.hi - s_range.lo) * factor;
    g.s_range = {mid - half, mid + half};
    return g;
}

std::pair<double, double> immersion_residuals(const RulingFrame& f) {
    double r_a = (f.s + f.xi) * f.theta_d + f.delta_d;
    double r_b = f.s * f.delta_d + f.gamma_d - f.delta * (f.xi_d - f.delta * f.theta_d);
    return {r_a, r_b};
}

double singular_residual(const RulingFrame& f) {
    double sx = f.s + f.xi;
    return (sx * sx + f.delta * f.delta) * f.theta_d + (2.0 * f.s + f.xi) * f.delta_d +
           f.gamma_d - f.delta * f.xi_d;
}

namespace {

struct Bisection {
    double x = 0.0;
    double residual = 0.0;
    bool converged = false;
};

// Bisects f over [a, b] (f(a) f(b) <= 0) until |f| < tol or the bracket is
// exhausted at double precision.
template <typename F>
Bisection bisect(F&& f, double a, double b, double fa, double fb, double tol) {
    if (fa == 0.0) return {a, 0.0, true};
    if (fb == 0.0) return {b, 0.0, true};
    double x = a, fx = fa;
    for (int i = 0; i < 200; ++i) {
        x = 0.5 * (a + b);
        if (x == a || x == b) break;
        fx = f(x);
        if (std::abs(fx) < tol) return {x, fx, true};
        if ((fx < 0) == (fa < 0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    return {x, fx, std::abs(fx) < tol};
}

// Relative parallelism of the surface normal to the contact direction
// (-y, x, 1); small values mean the tangent plane is the contact plane.
double contact_parallelism(const RulingFrame& f) {
    Vec3 v{-f.position.y, f.position.x, 1.0};
    double cn = norm(f.cross);
    if (cn == 0.0) return std::numeric_limits<double>::infinity();
    return norm(cross(f.cross, v)) / cn;
}

}  // namespace

SingularScan scan_singular_set(const SurfaceProfile& profile, const GridSpec& grid,
                               const Tolerances& tol) {
    SingularScan out;
    const std::size_t ns = grid.ns, nt = grid.nt;

    std::vector<double> res(ns * nt);
    parallel_for(nt, [&](std::size_t j) {
        double t = grid.t_at(j);
        for (std::size_t i = 0; i < ns; ++i)
            res[j * ns + i] = singular_residual(frame(profile, grid.s_at(i), t));
    });

    std::vector<SingularPoint> raw;
    int failed_refinements = 0;

    auto refine_s = [&](std::size_t i, std::size_t j) {
        double t = grid.t_at(j);
        auto f = [&](double s) { return singular_residual(frame(profile, s, t)); };
        Bisection b = bisect(f, grid.s_at(i), grid.s_at(i + 1), res[j * ns + i],
                             res[j * ns + i + 1], tol.singular);
        if (!b.converged) {
            ++failed_refinements;
            return;
        }
        raw.push_back({b.x, t, b.residual});
    };
    auto refine_t = [&](std::size_t i, std::size_t j) {
        double s = grid.s_at(i);
        auto f = [&](double t) { return singular_residual(frame(profile, s, t)); };
        Bisection b = bisect(f, grid.t_at(j), grid.t_at(j + 1), res[j * ns + i],
                             res[(j + 1) * ns + i], tol.singular);
        if (!b.converged) {
            ++failed_refinements;
            return;
        }
        raw.push_back({s, b.x, b.residual});
    };

    for (std::size_t j = 0; j < nt; ++j)
        for (std::size_t i = 0; i + 1 < ns; ++i)
            if ((res[j * ns + i] < 0) != (res[j * ns + i + 1] < 0)) refine_s(i, j);
    for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t j = 0; j + 1 < nt; ++j)
            if ((res[j * ns + i] < 0) != (res[(j + 1) * ns + i] < 0)) refine_t(i, j);

    // Confirm refined roots against the parallelism oracle; points with a
    // vanishing cross product are non-immersed, not singular.
    std::vector<SingularPoint> confirmed;
    for (const SingularPoint& p : raw) {
        RulingFrame f = frame(profile, p.s, p.t);
        double cn = norm(f.cross);
        if (cn < 1e-12 * (1.0 + std::abs(p.s))) continue;
        if (contact_parallelism(f) < tol.parallelism_oracle) confirmed.push_back(p);
    }

    std::sort(confirmed.begin(), confirmed.end(), [](const auto& a, const auto& b) {
        return a.t != b.t ? a.t < b.t : a.s < b.s;
    });
    for (const SingularPoint& p : confirmed) {
        if (!out.points.empty() && std::abs(out.points.back().t - p.t) < 1e-8 &&
            std::abs(out.points.back().s - p.s) < 1e-8)
            continue;
        out.points.push_back(p);
    }

    if (failed_refinements > 0)
        out.warnings.push_back("grid too coarse: " + std::to_string(failed_refinements) +
                               " sign-change brackets did not refine below tolerance");
    return out;
}

LineIntersection intersect_rulings(const ProjectedRuling& a, const ProjectedRuling& b,
                                   const Tolerances& tol) {
    LineIntersection r;
    double psi = b.theta - a.theta;
    double sin_psi = std::sin(psi);

    if (std::abs(sin_psi) < tol.parallel) {
        // Same projected direction; compare canonical lines.
        double dang = std::abs(a.line2.angle - b.line2.angle);
        dang = std::min(dang, std::numbers::pi - dang);
        double doff = std::abs(a.line2.offset - b.line2.offset);
        bool same_line = dang < 1e-9 && doff < 1e-9 * (1.0 + std::abs(a.line2.offset));
        if (!same_line) {
            r.kind = LineIntersection::Kind::ParallelDistinct;
            return r;
        }
        r.kind = LineIntersection::Kind::Coincident;
        Vec2 foot{a.line2.offset * std::cos(a.line2.angle),
                  a.line2.offset * std::sin(a.line2.angle)};
        r.z1 = a.lift_height(foot);
        r.z2 = b.lift_height(foot);
        r.gamma_gap = r.z2 - r.z1;
        return r;
    }

    double c1 = std::cos(a.theta), s1 = std::sin(a.theta);
    double c2 = std::cos(b.theta), s2 = std::sin(b.theta);

    r.kind = LineIntersection::Kind::Cross;
    r.x = (a.alpha * c1 * s2 - b.alpha * c2 * s1 - (b.beta - a.beta) * s1 * s2) / sin_psi;
    r.y = (b.beta * s2 * c1 - a.beta * s1 * c2 + (b.alpha - a.alpha) * c1 * c2) / sin_psi;
    r.z1 = a.lift_height({r.x, r.y});
    r.z2 = b.lift_height({r.x, r.y});

    double da = b.alpha - a.alpha;
    double db = b.beta - a.beta;
    r.gap = -(da * c2 + db * s2) * (da * c1 + db * s1) / sin_psi -
            (b.alpha * a.beta - a.alpha * b.beta) + b.gamma - a.gamma;
    return r;
}

double height_gap_reduced(const SurfaceProfile& profile, double t1, double t2) {
    DeltaXi d1 = decompose(profile, t1);
    DeltaXi d2 = decompose(profile, t2);
    double th1 = profile.theta.value(t1);
    double th2 = profile.theta.value(t2);
    // gamma of the xi-eliminated parametrization.
    double g1 = profile.gamma.value(t1) - d1.xi * d1.delta;
    double g2 = profile.gamma.value(t2) - d2.xi * d2.delta;
    double psi = th2 - th1;
    return (2.0 * d1.delta * d2.delta - (d1.delta * d1.delta + d2.delta * d2.delta) * std::cos(psi)) /
               std::sin(psi) +
           g2 - g1;
}

std::vector<InjectivityViolation> injectivity_scan(const SurfaceProfile& profile,
                                                   const std::vector<double>& t_samples,
                                                   GapPath path, const Tolerances& tol) {
    std::vector<InjectivityViolation> out;
    std::vector<ProjectedRuling> rulings;
    rulings.reserve(t_samples.size());
    for (double t : t_samples) rulings.push_back(projected_ruling(profile, t));

    for (std::size_t i = 0; i < rulings.size(); ++i) {
        for (std::size_t j = i + 1; j < rulings.size(); ++j) {
            LineIntersection isec = intersect_rulings(rulings[i], rulings[j], tol);
            if (isec.kind == LineIntersection::Kind::Cross) {
                double gap = isec.gap;
                if (path == GapPath::Reduced)
                    gap = height_gap_reduced(profile, t_samples[i], t_samples[j]);
                if (std::abs(gap) < tol.gap)
                    out.push_back({InjectivityViolation::Kind::CrossGapZero, t_samples[i],
                                   t_samples[j], gap});
            } else if (isec.kind == LineIntersection::Kind::Coincident) {
                if (std::abs(isec.gamma_gap) < tol.gap)
                    out.push_back({InjectivityViolation::Kind::CoincidentSameHeight, t_samples[i],
                                   t_samples[j], isec.gamma_gap});
            }
        }
    }
    return out;
}

AreaIdentityResult area_identity(const SurfaceProfile& profile, double t1, double t2, double t3,
                                 const Tolerances& tol) {
    ProjectedRuling r1 = projected_ruling(profile, t1);
    ProjectedRuling r2 = projected_ruling(profile, t2);
    ProjectedRuling r3 = projected_ruling(profile, t3);

    LineIntersection i12 = intersect_rulings(r1, r2, tol);
    LineIntersection i23 = intersect_rulings(r2, r3, tol);
    LineIntersection i31 = intersect_rulings(r3, r1, tol);
    if (i12.kind != LineIntersection::Kind::Cross || i23.kind != LineIntersection::Kind::Cross ||
        i31.kind != LineIntersection::Kind::Cross)
        throw DegenerateTriple("a ruling pair does not cross");

    AreaIdentityResult res;
    res.p = {i12.x, i12.y};
    res.q = {i23.x, i23.y};
    res.r = {i31.x, i31.y};

    auto dist = [](const Vec2& a, const Vec2& b) { return std::hypot(a.x - b.x, a.y - b.y); };
    double scale = 1.0 + std::abs(res.p.x) + std::abs(res.p.y);
    if (dist(res.p, res.q) < 1e-9 * scale || dist(res.q, res.r) < 1e-9 * scale ||
        dist(res.r, res.p) < 1e-9 * scale)
        throw DegenerateTriple("intersection points coincide");

    // (z1 - z2)(P) + (z2 - z3)(Q) + (z3 - z1)(R): each pairwise gap is
    // z_second - z_first, so the sum is minus the sum of gaps.
    res.lhs = -(i12.gap + i23.gap + i31.gap);
    res.rhs = 2.0 * signed_polygon_area(std::vector<Vec2>{res.p, res.r, res.q});
    return res;
}

PropernessReport properness_check(const SurfaceProfile& profile, int doublings) {
    PropernessReport rep;
    if (profile.topology == Topology::Annulus) {
        rep.verdict = Properness::Proper;
        rep.note = "annulus topology: proper unconditionally";
        double t0 = profile.t_range.lo;
        double t1 = profile.t_range.hi;
        for (int k = 0; k <= 8; ++k) {
            double t = t0 + (t1 - t0) * k / 8.0;
            rep.evidence.emplace_back(t, line_origin_distance(ruling_line3(profile, t)));
        }
        return rep;
    }

    const bool tabulated = profile.theta.is_tabulated() || profile.alpha.is_tabulated() ||
                           profile.beta.is_tabulated() || profile.gamma.is_tabulated();
    if (tabulated) {
        rep.verdict = Properness::Inconclusive;
        rep.note = "tabulated profile: cannot probe beyond the declared t range";
        return rep;
    }

    double base = std::max({1.0, std::abs(profile.t_range.lo), std::abs(profile.t_range.hi)});
    int K = std::max(10, doublings);

    bool both_diverge = true;
    bool any_bounded = false;
    std::string note;

    for (int sign = -1; sign <= 1; sign += 2) {
        std::vector<double> rs;
        for (int k = 0; k <= K; ++k) {
            double t = sign * base * std::pow(2.0, k);
            double r;
            try {
                r = line_origin_distance(ruling_line3(profile, t));
            } catch (const DomainError&) {
                note = "profile not evaluable on the full probe range";
                break;
            }
            rs.push_back(r);
            rep.evidence.emplace_back(t, r);
        }
        if (static_cast<int>(rs.size()) <= K) {
            both_diverge = false;
            continue;
        }

        double r0 = rs.front(), rm = rs[K / 2], rK = rs.back();
        bool diverged = rK >= 1.0 && rK >= 4.0 * rm && (rm >= 2.0 * r0 || rm >= 1.0);

        // Bounded: no growth over the final stretch although |t| expanded by
        // more than 1e3 relative to the probe base.
        int k3 = 10;  // 2^10 > 1e3
        double early = 0.0, late = 0.0;
        for (int k = 0; k < k3; ++k) early = std::max(early, rs[k]);
        for (int k = k3; k <= K; ++k) late = std::max(late, rs[k]);
        bool bounded = late <= 1.1 * early + 1e-6;

        if (!diverged) both_diverge = false;
        if (bounded) any_bounded = true;
    }

    std::sort(rep.evidence.begin(), rep.evidence.end());
    if (both_diverge) {
        rep.verdict = Properness::Proper;
        rep.note = "ruling-origin distance diverges on both tails";
    } else if (any_bounded) {
        rep.verdict = Properness::NotProper;
        rep.note = "ruling-origin distance stays bounded while |t| grows by > 1e3";
    } else {
        rep.verdict = Properness::Inconclusive;
        rep.note = note.empty() ? "no conclusive growth pattern on the probed range" : note;
    }
    return rep;
}

std::optional<Point3> ruling_intersection_probe(const SurfaceProfile& profile,
                                                const std::vector<double>& t_samples,
                                                const Tolerances& tol) {
    std::vector<double> ts = t_samples;
    std::sort(ts.begin(), ts.end());
    std::vector<ProjectedRuling> rulings;
    rulings.reserve(ts.size());
    for (double t : ts) rulings.push_back(projected_ruling(profile, t));

    std::vector<Point3> candidates;
    const std::size_t window = 5;
    for (std::size_t i = 0; i < rulings.size(); ++i) {
        for (std::size_t j = i + 1; j < rulings.size() && j <= i + window; ++j) {
            LineIntersection isec = intersect_rulings(rulings[i], rulings[j], tol);
            if (isec.kind != LineIntersection::Kind::Cross) continue;
            if (std::abs(isec.gap) < tol.meet)
                candidates.push_back({isec.x, isec.y, 0.5 * (isec.z1 + isec.z2)});
        }
    }
    if (candidates.size() < 3) return std::nullopt;

    Point3 mean{0, 0, 0};
    for (const Point3& c : candidates) mean = mean + c;
    mean = mean / static_cast<double>(candidates.size());
    double scale = 1.0 + norm(mean);
    for (const Point3& c : candidates)
        if (norm(c - mean) > 1e-6 * scale) return std::nullopt;
    return mean;
}

ContainmentReport halfspace_probe(const SurfaceProfile& profile, const Plane3& plane,
                                  const GridSpec& grid, const Tolerances& tol,
                                  std::optional<bool> classified_contact_plane) {
    (void)tol;
    if (std::abs(plane.normal.z) < 1e-12)
        throw InvalidPlane("plane is perpendicular to the xy-plane; not a contact plane");

    // Orient so the normal points toward (0, 0, +inf).
    Plane3 p = plane;
    if (p.normal.z < 0) {
        p.normal = p.normal * -1.0;
        p.offset = -p.offset;
    }

    ContainmentReport rep;
    double eps = 1e-9 * (1.0 + std::abs(p.offset));
    double min_d = std::numeric_limits<double>::infinity();
    double max_d = -std::numeric_limits<double>::infinity();

    for (std::size_t j = 0; j < grid.nt; ++j) {
        for (std::size_t i = 0; i < grid.ns; ++i) {
            Point3 q = evaluate(profile, grid.s_at(i), grid.t_at(j));
            double d = p.signed_distance(q);
            min_d = std::min(min_d, d);
            max_d = std::max(max_d, d);
            if (d > eps && rep.witnesses_above.size() < 4) rep.witnesses_above.push_back(q);
            if (d < -eps && rep.witnesses_below.size() < 4) rep.witnesses_below.push_back(q);
        }
    }
    rep.min_distance = min_d;
    rep.max_distance = max_d;

    if (min_d >= -eps)
        rep.kind = ContainmentReport::Kind::ContainedAbove;
    else if (max_d <= eps)
        rep.kind = ContainmentReport::Kind::ContainedBelow;
    else
        rep.kind = ContainmentReport::Kind::Straddles;

    if (rep.kind != ContainmentReport::Kind::Straddles && classified_contact_plane.has_value())
        rep.theorem_d_violation = !*classified_contact_plane;
    return rep;
}

std::vector<NonImmersedPoint> scan_non_immersed(const SurfaceProfile& profile,
                                                const GridSpec& grid, const Tolerances& tol) {
    std::vector<NonImmersedPoint> out;
    const double theta_d_eps = 1e-13;

    // r_a is linear in s; follow its root s*(t) and look for zeros of r_b
    // along that curve.
    auto root_curve = [&](double t) -> std::optional<std::pair<double, double>> {
        RulingFrame f0 = frame(profile, 0.0, t);
        if (std::abs(f0.theta_d) <= theta_d_eps) return std::nullopt;
        double s_star = -f0.xi - f0.delta_d / f0.theta_d;
        RulingFrame f = frame(profile, s_star, t);
        auto [ra, rb] = immersion_residuals(f);
        (void)ra;
        return std::make_pair(s_star, rb);
    };

    std::optional<std::pair<double, double>> prev;  // (t, r_b at s*(t))
    for (std::size_t j = 0; j < grid.nt; ++j) {
        double t = grid.t_at(j);
        RulingFrame f0 = frame(profile, 0.0, t);

        if (std::abs(f0.theta_d) <= theta_d_eps) {
            // r_a == delta' for every s.
            if (std::abs(f0.delta_d) < tol.immersion) {
                double rb = f0.gamma_d - f0.delta * (f0.xi_d - f0.delta * f0.theta_d);
                if (std::abs(rb) < tol.immersion)
                    out.push_back({0.5 * (grid.s_range.lo + grid.s_range.hi), t, f0.delta_d, rb,
                                   true});
            }
            prev.reset();
            continue;
        }

        auto cur = root_curve(t);
        if (!cur) {
            prev.reset();
            continue;
        }
        auto [s_star, rb] = *cur;
        bool in_range = grid.s_range.contains(s_star);

        if (in_range && std::abs(rb) < tol.immersion) {
            out.push_back({s_star, t, 0.0, rb, false});
        } else if (prev && (rb < 0) != (prev->second < 0)) {
            auto h = [&](double tt) {
                auto c = root_curve(tt);
                return c ? c->second : std::numeric_limits<double>::quiet_NaN();
            };
            Bisection b = bisect(h, prev->first, t, prev->second, rb, tol.immersion);
            if (b.converged) {
                auto c = root_curve(b.x);
                if (c && grid.s_range.contains(c->first)) {
                    RulingFrame f = frame(profile, c->first, b.x);
                    auto [ra2, rb2] = immersion_residuals(f);
                    if (std::abs(ra2) < tol.immersion && std::abs(rb2) < tol.immersion)
                        out.push_back({c->first, b.x, ra2, rb2, false});
                }
            }
        }
        prev = {t, rb};
    }

    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.t != b.t ? a.t < b.t : a.s < b.s;
    });
    std::vector<NonImmersedPoint> dedup;
    for (const auto& p : out) {
        if (!dedup.empty() && std::abs(dedup.back().t - p.t) < 1e-8 &&
            std::abs(dedup.back().s - p.s) < 1e-8)
            continue;
        dedup.push_back(p);
    }
    return dedup;
}

AnalysisReport analyze(const SurfaceProfile& profile, const GridSpec& grid,
                       const Tolerances& tol) {
    AnalysisReport rep;
    rep.grid = grid;
    rep.non_immersed_points = scan_non_immersed(profile, grid, tol);

    SingularScan sing = scan_singular_set(profile, grid, tol);
    rep.singular_points = std::move(sing.points);
    rep.warnings = std::move(sing.warnings);

    std::vector<double> ts;
    ts.reserve(grid.nt);
    for (std::size_t j = 0; j < grid.nt; ++j) ts.push_back(grid.t_at(j));
    rep.injectivity_violations = injectivity_scan(profile, ts, GapPath::General, tol);
    rep.injectivity_pairs_tested = ts.size() * (ts.size() - 1) / 2;

    rep.properness = properness_check(profile);
    rep.degenerate_contact_plane = ruling_intersection_probe(profile, ts, tol);
    return rep;
}

}  // namespace pmin

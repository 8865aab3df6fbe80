#include "pmin/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "pmin/parallel.hpp"
#include "pmin/profile_io.hpp"

namespace pmin {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

GraphPatch GraphPatch::from_function(std::function<double(double, double)> u, Interval x_range,
                                     Interval y_range, double h) {
    return GraphPatch{std::move(u), x_range, y_range, h};
}

GraphPatch GraphPatch::from_vertical(double a, double b, const ProfileFunction& g,
                                     Interval x_range, Interval y_range, double h) {
    if (std::abs(a * a + b * b - 1.0) > 1e-9)
        throw NormalizationError("graph patch requires a^2 + b^2 = 1");
    ProfileFunction gc = g;
    auto u = [a, b, gc](double x, double y) {
        double w = -b * x + a * y;
        return -a * b * x * x + (a * a - b * b) * x * y + a * b * y * y + gc.value(w);
    };
    return GraphPatch{std::move(u), x_range, y_range, h};
}

GraphPatch GraphPatch::from_tilted(double x0, double y0, const ProfileFunction& theta,
                                   Interval x_range, Interval y_range, double h,
                                   Interval z_window) {
    ProfileFunction th = theta;
    auto defining = [x0, y0, th](double x, double y, double z) {
        double t = z - y0 * x + x0 * y;
        double a = th.value(t);
        return (x - x0) * std::cos(a) + (y - y0) * std::sin(a);
    };
    auto defining_dz = [x0, y0, th](double x, double y, double z) {
        double t = z - y0 * x + x0 * y;
        auto [a, ad] = th.eval_with_derivative(t);
        return (-(x - x0) * std::sin(a) + (y - y0) * std::cos(a)) * ad;
    };

    auto u = [=](double x, double y) -> double {
        const int m = 256;
        double best = kNaN;
        double best_dist = std::numeric_limits<double>::infinity();
        double mid = 0.5 * (z_window.lo + z_window.hi);

        double zp = z_window.lo;
        double fp = defining(x, y, zp);
        for (int i = 1; i <= m; ++i) {
            double z = z_window.lerp(double(i) / m);
            double f = defining(x, y, z);
            if ((f < 0) != (fp < 0) || fp == 0.0) {
                double a = zp, b = z, fa = fp;
                double root = a;
                for (int it = 0; it < 80; ++it) {
                    root = 0.5 * (a + b);
                    double fr = defining(x, y, root);
                    if (fr == 0.0) break;
                    if ((fr < 0) == (fa < 0)) {
                        a = root;
                        fa = fr;
                    } else {
                        b = root;
                    }
                }
                for (int it = 0; it < 4; ++it) {
                    double fr = defining(x, y, root);
                    double dr = defining_dz(x, y, root);
                    if (dr == 0.0) break;
                    double next = root - fr / dr;
                    if (next < z_window.lo || next > z_window.hi) break;
                    if (std::abs(defining(x, y, next)) >= std::abs(fr)) break;
                    root = next;
                }
                if (std::abs(defining(x, y, root)) < 1e-11 && std::abs(root - mid) < best_dist) {
                    best = root;
                    best_dist = std::abs(root - mid);
                }
            }
            zp = z;
            fp = f;
        }
        return best;
    };
    return GraphPatch{std::move(u), x_range, y_range, h};
}

double legendrian_residual(const SurfaceProfile& profile, std::size_t ns, std::size_t nt) {
    std::vector<double> row_max(nt, 0.0);
    parallel_for(nt, [&](std::size_t j) {
        double t = profile.t_range.lerp(double(j) / double(nt - 1));
        double th = profile.theta.value(t);
        double a = profile.alpha.value(t);
        double b = profile.beta.value(t);
        double g = profile.gamma.value(t);
        double sin_th = std::sin(th);
        double cos_th = std::cos(th);
        double delta = a * cos_th + b * sin_th;
        Vec3 d_s{sin_th, -cos_th, delta};
        double m = 0.0;
        for (std::size_t i = 0; i < ns; ++i) {
            double s = profile.s_range.lerp(double(i) / double(ns - 1));
            Point3 p{s * sin_th + a, -s * cos_th + b, s * delta + g};
            m = std::max(m, std::abs(contact_form(p, d_s)));
        }
        row_max[j] = m;
    });
    return *std::max_element(row_max.begin(), row_max.end());
}

namespace {

struct GridResult {
    double max_residual = 0.0;
    std::size_t total = 0;
    std::size_t excluded = 0;
    std::vector<std::array<double, 3>> field;
};

GridResult residual_on_grid(const GraphPatch& patch, double h, const Tolerances& tol,
                            bool capture) {
    const std::size_t nx = static_cast<std::size_t>(std::floor(patch.x_range.length() / h + 0.5)) + 1;
    const std::size_t ny = static_cast<std::size_t>(std::floor(patch.y_range.length() / h + 0.5)) + 1;

    auto grad = [&](double x, double y, Vec2& out) -> bool {
        double uxp = patch.u(x + h, y);
        double uxm = patch.u(x - h, y);
        double uyp = patch.u(x, y + h);
        double uym = patch.u(x, y - h);
        if (!std::isfinite(uxp) || !std::isfinite(uxm) || !std::isfinite(uyp) ||
            !std::isfinite(uym))
            return false;
        out = {(uxp - uxm) / (2 * h), (uyp - uym) / (2 * h)};
        return true;
    };
    // Unit field N = (grad u + F)/|grad u + F|, F = (-y, x).
    auto unit = [&](double x, double y, Vec2& out) -> int {
        Vec2 g;
        if (!grad(x, y, g)) return -1;     // not evaluable
        double vx = g.x - y;
        double vy = g.y + x;
        double len = std::hypot(vx, vy);
        if (len < tol.sing_exclusion) return 0;  // singular
        out = {vx / len, vy / len};
        return 1;
    };

    std::vector<char> singular(nx * ny, 0);
    std::vector<double> res(nx * ny, kNaN);

    parallel_for(ny, [&](std::size_t j) {
        double y = patch.y_range.lo + double(j) * h;
        for (std::size_t i = 0; i < nx; ++i) {
            double x = patch.x_range.lo + double(i) * h;
            Vec2 nc;
            int st = unit(x, y, nc);
            if (st == 0) {
                singular[j * nx + i] = 1;
                continue;
            }
            if (st < 0) continue;
            Vec2 nxp, nxm, nyp, nym;
            if (unit(x + h, y, nxp) != 1 || unit(x - h, y, nxm) != 1 ||
                unit(x, y + h, nyp) != 1 || unit(x, y - h, nym) != 1)
                continue;
            // A near-unit jump across the stencil means it straddles the
            // discontinuity of N along the singular set.
            if (std::hypot(nxp.x - nxm.x, nxp.y - nxm.y) > 1.0 ||
                std::hypot(nyp.x - nym.x, nyp.y - nym.y) > 1.0) {
                singular[j * nx + i] = 1;
                continue;
            }
            res[j * nx + i] = (nxp.x - nxm.x) / (2 * h) + (nyp.y - nym.y) / (2 * h);
        }
    });

    // Exclude everything within 10h (Chebyshev) of a singular-marked node.
    std::vector<char> excluded(nx * ny, 0);
    const long r = 10;
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) {
            if (!singular[j * nx + i]) continue;
            for (long dj = -r; dj <= r; ++dj)
                for (long di = -r; di <= r; ++di) {
                    long ii = static_cast<long>(i) + di;
                    long jj = static_cast<long>(j) + dj;
                    if (ii < 0 || jj < 0 || ii >= static_cast<long>(nx) ||
                        jj >= static_cast<long>(ny))
                        continue;
                    excluded[jj * nx + ii] = 1;
                }
        }

    GridResult out;
    out.total = nx * ny;
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) {
            double v = res[j * nx + i];
            if (excluded[j * nx + i] || !std::isfinite(v)) {
                ++out.excluded;
                continue;
            }
            out.max_residual = std::max(out.max_residual, std::abs(v));
            if (capture)
                out.field.push_back({patch.x_range.lo + double(i) * h,
                                     patch.y_range.lo + double(j) * h, v});
        }
    return out;
}

}  // namespace

ResidualReport pde_residual(const GraphPatch& patch, const Tolerances& tol, bool capture_field) {
    ResidualReport rep;
    rep.h = patch.h;

    GridResult g1 = residual_on_grid(patch, patch.h, tol, capture_field);
    rep.max_residual = g1.max_residual;
    rep.total_nodes = g1.total;
    rep.excluded_nodes = g1.excluded;
    rep.field = std::move(g1.field);
    if (g1.excluded * 2 > g1.total)
        throw SingularContamination("singular-set exclusion removed more than half of the grid");

    GridResult g2 = residual_on_grid(patch, patch.h / 2, tol, false);
    GridResult g4 = residual_on_grid(patch, patch.h / 4, tol, false);
    rep.max_residual_h2 = g2.max_residual;
    rep.max_residual_h4 = g4.max_residual;

    rep.exact_zero = rep.max_residual < 1e-15 && g2.max_residual < 1e-15 &&
                     g4.max_residual < 1e-15;
    if (!rep.exact_zero && g2.max_residual > 0 && g4.max_residual > 0) {
        rep.ratio_1 = rep.max_residual / g2.max_residual;
        rep.ratio_2 = g2.max_residual / g4.max_residual;
    }
    return rep;
}

bool GoldenReport::all_passed() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const GoldenAssertion& a) { return a.passed; });
}

namespace {

void check(GoldenReport& rep, const std::string& example, const std::string& name, bool ok,
           double value, const std::string& detail = {}) {
    rep.entries.push_back({example, name, ok, value, detail});
}

double max_implicit_residual(const SurfaceProfile& p, std::size_t n,
                             const std::function<double(const Point3&)>& f) {
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            Point3 q = evaluate(p, p.s_range.lerp(double(i) / (n - 1)),
                                p.t_range.lerp(double(j) / (n - 1)));
            m = std::max(m, std::abs(f(q)));
        }
    return m;
}

std::string kind_name(Classification::Kind k) {
    switch (k) {
        case Classification::Kind::ContactPlane: return "contact-plane";
        case Classification::Kind::HelicoidVertical: return "helicoid-vertical";
        case Classification::Kind::HelicoidTilted: return "helicoid-tilted";
        case Classification::Kind::WeakHelicoid: return "weak-helicoid";
        case Classification::Kind::NonHelicoid: return "non-helicoid";
    }
    return "?";
}

}  // namespace

GoldenReport golden_examples(const std::string& profiles_dir) {
    GoldenReport rep;
    auto path = [&](const char* name) { return profiles_dir + "/" + name; };

    // --- tilted helicoid z(x+1) = y(x-1), ruled parametrization ---
    {
        SurfaceProfile p = load_profile(path("ex21.json"));
        double implicit = max_implicit_residual(
            p, 200, [](const Point3& q) { return q.z * (q.x + 1) - q.y * (q.x - 1); });
        check(rep, "ex21", "implicit equation z(x+1)=y(x-1)", implicit < 1e-9, implicit);

        std::mt19937 rng(42);
        std::uniform_real_distribution<double> ut(p.t_range.lo, p.t_range.hi);
        bool gaps_negative = true;
        double worst = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < 200; ++k) {
            double t1 = ut(rng), t2 = ut(rng);
            if (t1 == t2) continue;
            if (t1 > t2) std::swap(t1, t2);
            LineIntersection is = intersect_rulings(projected_ruling(p, t1),
                                                    projected_ruling(p, t2));
            if (is.kind != LineIntersection::Kind::Cross) continue;
            worst = std::max(worst, is.gap);
            gaps_negative = gaps_negative && is.gap < 0.0;
        }
        check(rep, "ex21", "height gap negative for t1<t2", gaps_negative, worst);

        GridSpec grid = GridSpec::from_profile(p, 200, 200);
        auto ni = scan_non_immersed(p, grid);
        check(rep, "ex21", "immersed (no simultaneous first-order degeneracy)", ni.empty(),
              double(ni.size()));

        std::vector<double> ts(100);
        for (std::size_t i = 0; i < ts.size(); ++i)
            ts[i] = p.t_range.lerp(double(i) / (ts.size() - 1));
        auto viol = injectivity_scan(p, ts);
        check(rep, "ex21", "injective on sampled ruling pairs", viol.empty(), double(viol.size()));

        double leg = legendrian_residual(p);
        check(rep, "ex21", "Legendrian ruling identity", leg < 1e-12, leg);

        Classification cls = classify(p);
        bool tilted = cls.kind == Classification::Kind::HelicoidTilted;
        check(rep, "ex21", "classified as tilted helicoid", tilted, 0.0, kind_name(cls.kind));
        if (tilted) {
            check(rep, "ex21", "recovered x0 = -1", std::abs(cls.x0 + 1) < 1e-8, cls.x0);
            check(rep, "ex21", "recovered y0 = 0", std::abs(cls.y0) < 1e-8, cls.y0);
            double worst_tan = 0.0;
            for (int i = 0; i <= 200; ++i) {
                double t = 0.1 + (10.0 - 0.1) * i / 200.0;
                double th = cls.theta->value(t);
                worst_tan = std::max(worst_tan, std::abs(std::tan(th) * t - 2.0));
            }
            check(rep, "ex21", "recovered angle satisfies tan(theta(t)) t = 2", worst_tan < 1e-7,
                  worst_tan);
        }

        PropernessReport prop = properness_check(p);
        check(rep, "ex21", "proper (ruling-origin distance diverges)",
              prop.verdict == Properness::Proper, 0.0, prop.note);

        // Singular roots must satisfy the tilted-form criterion
        // 1 + s~^2 theta'(t~) = 0 with t~ = z - y, s~^2 = (x+1)^2 + y^2.
        auto sing = scan_singular_set(p, GridSpec::from_profile(p, 100, 100));
        double worst_c = 0.0;
        for (const SingularPoint& sp : sing.points) {
            Point3 q = evaluate(p, sp.s, sp.t);
            double that = q.z - q.y;
            double s2 = (q.x + 1) * (q.x + 1) + q.y * q.y;
            double thd = -2.0 / (4.0 + that * that);
            worst_c = std::max(worst_c, std::abs(1.0 + s2 * thd));
        }
        check(rep, "ex21", "singular roots satisfy 1 + s^2 theta' = 0", worst_c < 1e-6,
              worst_c, std::to_string(sing.points.size()) + " roots");
    }

    // --- same surface in tilted canonical form ---
    {
        SurfaceProfile p = load_profile(path("ex31.json"));
        double implicit = max_implicit_residual(
            p, 150, [](const Point3& q) { return q.z * (q.x + 1) - q.y * (q.x - 1); });
        check(rep, "ex31", "implicit equation z(x+1)=y(x-1)", implicit < 1e-9, implicit);

        Classification cls = classify(p);
        bool tilted = cls.kind == Classification::Kind::HelicoidTilted &&
                      std::abs(cls.x0 + 1) < 1e-8 && std::abs(cls.y0) < 1e-8;
        check(rep, "ex31", "classified as tilted helicoid at (-1, 0)", tilted,
              std::abs(cls.x0 + 1) + std::abs(cls.y0), kind_name(cls.kind));

        SingularFreeResult sf = singular_free_tilted(p.theta, p.t_range);
        check(rep, "ex31", "decreasing angle implies singular points exist", !sf.singular_free,
              sf.min_theta_d);
    }

    // --- two-branch weak helicoid (z - xy)^2 = y ---
    for (const char* name : {"ex41a", "ex41b"}) {
        SurfaceProfile p = load_profile(path((std::string(name) + ".json").c_str()));
        double implicit = max_implicit_residual(p, 150, [](const Point3& q) {
            double w = q.z - q.x * q.y;
            return w * w - q.y;
        });
        check(rep, name, "implicit equation (z-xy)^2 = y", implicit < 1e-9, implicit);

        double leg = legendrian_residual(p);
        check(rep, name, "Legendrian ruling identity", leg < 1e-12, leg);

        Classification cls = classify(p);
        bool weak = cls.kind == Classification::Kind::WeakHelicoid;
        check(rep, name, "classified as weak helicoid", weak, 0.0, kind_name(cls.kind));
        if (weak) {
            double ny = std::abs(cls.plane_normal.y);
            double off = std::hypot(cls.plane_normal.x, cls.plane_normal.z);
            check(rep, name, "ruling planes parallel to {y = const}", ny > 1.0 - 1e-8 && off < 1e-8,
                  off);
            check(rep, name, "plane offsets stay in {y >= 0}",
                  cls.certificate.offset_min >= -1e-9, cls.certificate.offset_min);
        }
    }

    // --- non-helicoid proper band (unit-distance rulings) ---
    {
        SurfaceProfile p = load_profile(path("ex42.json"));
        // Membership: x^2 + y^2 + z^2 = 1 + s^2 + (s + t)^2 for gamma = t.
        double worst = 0.0;
        for (int j = 0; j <= 100; ++j)
            for (int i = 0; i <= 100; ++i) {
                double s = p.s_range.lerp(i / 100.0);
                double t = p.t_range.lerp(j / 100.0);
                Point3 q = evaluate(p, s, t);
                double lhs = q.x * q.x + q.y * q.y + q.z * q.z;
                double rhs = 1.0 + s * s + (s + t) * (s + t);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        check(rep, "ex42", "norm identity |X|^2 = 1 + s^2 + (s+gamma)^2", worst < 1e-9, worst);

        double worst_r = 0.0;
        for (double t : {1.0, -1.0, 10.0, -10.0, 100.0, -100.0}) {
            double r = line_origin_distance(ruling_line3(p, t));
            worst_r = std::max(worst_r, std::abs(r - std::sqrt(1.0 + t * t / 2.0)));
        }
        check(rep, "ex42", "ruling-origin distance sqrt(1 + t^2/2)", worst_r < 1e-9, worst_r);

        PropernessReport prop = properness_check(p);
        check(rep, "ex42", "proper", prop.verdict == Properness::Proper, 0.0, prop.note);

        auto sing = scan_singular_set(p, GridSpec::from_profile(p, 100, 100));
        check(rep, "ex42", "no singular points", sing.points.empty(), double(sing.points.size()));

        Classification cls = classify(p);
        check(rep, "ex42", "classified as non-helicoid",
              cls.kind == Classification::Kind::NonHelicoid, 0.0, kind_name(cls.kind));

        double leg = legendrian_residual(p);
        check(rep, "ex42", "Legendrian ruling identity", leg < 1e-12, leg);
    }

    // --- vertical plane ---
    {
        SurfaceProfile p = load_profile(path("plane.json"));
        auto sing = scan_singular_set(p, GridSpec::from_profile(p, 100, 100));
        check(rep, "plane", "no singular points", sing.points.empty(),
              double(sing.points.size()));

        std::vector<double> ts(100);
        for (std::size_t i = 0; i < ts.size(); ++i)
            ts[i] = p.t_range.lerp(double(i) / (ts.size() - 1));
        auto viol = injectivity_scan(p, ts);
        check(rep, "plane", "injective (monotone heights on a fixed line)", viol.empty(),
              double(viol.size()));

        Classification cls = classify(p);
        bool tilted = cls.kind == Classification::Kind::HelicoidTilted;
        check(rep, "plane", "classified as tilted helicoid with constant angle", tilted, 0.0,
              kind_name(cls.kind));

        PropernessReport prop = properness_check(p);
        check(rep, "plane", "proper", prop.verdict == Properness::Proper, 0.0, prop.note);
    }

    // --- contact plane ---
    {
        SurfaceProfile p = load_profile(path("contactplane.json"));
        std::vector<double> ts(64);
        for (std::size_t i = 0; i < ts.size(); ++i)
            ts[i] = p.t_range.lerp(double(i) / (ts.size() - 1));
        auto meet = ruling_intersection_probe(p, ts);
        check(rep, "contactplane", "rulings meet at a common point", meet.has_value(),
              meet ? norm(*meet - Point3{0.5, -0.25, 1.0}) : -1.0);

        Classification cls = classify(p);
        bool cp = cls.kind == Classification::Kind::ContactPlane;
        check(rep, "contactplane", "classified as contact plane", cp,
              cls.certificate.surface_agreement, kind_name(cls.kind));

        if (cp) {
            Plane3 own = contact_plane_at(cls.through);
            GridSpec grid = GridSpec::from_profile(p, 40, 40);
            Plane3 below = own;
            below.offset -= 1.0;
            auto contain = halfspace_probe(p, below, grid, Tolerances{}, cp);
            check(rep, "contactplane", "contained above a parallel contact plane",
                  contain.kind == ContainmentReport::Kind::ContainedAbove &&
                      !contain.theorem_d_violation,
                  contain.min_distance);
            Plane3 above = own;
            above.offset += 1.0;
            auto contain2 = halfspace_probe(p, above, grid, Tolerances{}, cp);
            check(rep, "contactplane", "contained below a parallel contact plane",
                  contain2.kind == ContainmentReport::Kind::ContainedBelow &&
                      !contain2.theorem_d_violation,
                  contain2.max_distance);
        }
    }

    // --- entire graph y = xz over the xz-plane ---
    {
        SurfaceProfile p = load_profile(path("y_eq_xz.json"));
        double implicit = max_implicit_residual(
            p, 150, [](const Point3& q) { return q.y - q.x * q.z; });
        check(rep, "y_eq_xz", "implicit equation y = xz", implicit < 1e-9, implicit);

        GridSpec wide = GridSpec::from_profile(p, 100, 100);
        wide.s_range = {-20.0, 20.0};
        wide.t_range = {-20.0, 20.0};
        auto sing = scan_singular_set(p, wide);
        check(rep, "y_eq_xz", "no singular points", sing.points.empty(),
              double(sing.points.size()));

        SingularFreeResult sf = singular_free_tilted(p.theta, {-20.0, 20.0});
        check(rep, "y_eq_xz", "increasing angle criterion", sf.singular_free, sf.min_theta_d);

        Classification cls = classify(p);
        bool tilted = cls.kind == Classification::Kind::HelicoidTilted &&
                      std::abs(cls.x0) < 1e-8 && std::abs(cls.y0) < 1e-8;
        check(rep, "y_eq_xz", "classified as tilted helicoid at the origin", tilted,
              std::abs(cls.x0) + std::abs(cls.y0), kind_name(cls.kind));

        GraphPatch patch = GraphPatch::from_tilted(0.0, 0.0, p.theta, {0.5, 2.0}, {-1.0, 1.0},
                                                   1.0 / 32.0, {-4.5, 4.5});
        ResidualReport rr = pde_residual(patch);
        bool conv = rr.ratio_1 && rr.ratio_2 && *rr.ratio_1 > 3.5 && *rr.ratio_1 < 4.5 &&
                    *rr.ratio_2 > 3.5 && *rr.ratio_2 < 4.5;
        check(rep, "y_eq_xz", "graph residual converges at second order", conv,
              rr.ratio_1 ? *rr.ratio_1 : -1.0);
    }

    return rep;
}

}  // namespace pmin

#include "pmin/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace pmin {

namespace {

Vec3 ruling_tangent(const SurfaceProfile& profile, double t) {
    double th = profile.theta.value(t);
    double a = profile.alpha.value(t);
    double b = profile.beta.value(t);
    double sin_th = std::sin(th);
    double cos_th = std::cos(th);
    return {sin_th, -cos_th, a * cos_th + b * sin_th};
}

Vec3 orient_normal(Vec3 n) {
    if (n.z < -1e-12) return n * -1.0;
    if (std::abs(n.z) <= 1e-12) {
        if (n.y < -1e-12) return n * -1.0;
        if (std::abs(n.y) <= 1e-12 && n.x < 0) return n * -1.0;
    }
    return n;
}

struct OffsetProbe {
    double c_min = 0.0;
    double c_max = 0.0;
    double min_abs_derivative = 0.0;
    bool monotone = false;
    bool diverges = false;
    bool tails_probed = false;
};

// c maps the ruling parameter to the offset of its parallel plane; the
// family sweeps space iff c is injective and covers all of R. Monotonicity
// is checked on the declared range, divergence on geometrically expanding
// tails (expression profiles only).
OffsetProbe probe_offsets(const std::function<std::pair<double, double>(double)>& c,
                          Interval range, bool extensible) {
    OffsetProbe probe;
    const std::size_t n = 512;
    double min_cd = std::numeric_limits<double>::infinity();
    double max_cd = 0.0;
    bool all_pos = true, all_neg = true;
    probe.c_min = std::numeric_limits<double>::infinity();
    probe.c_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= n; ++i) {
        auto [cv, cd] = c(range.lerp(double(i) / n));
        probe.c_min = std::min(probe.c_min, cv);
        probe.c_max = std::max(probe.c_max, cv);
        min_cd = std::min(min_cd, std::abs(cd));
        max_cd = std::max(max_cd, std::abs(cd));
        all_pos = all_pos && cd > 0;
        all_neg = all_neg && cd < 0;
    }
    probe.min_abs_derivative = min_cd;
    probe.monotone = (all_pos || all_neg) && min_cd > 1e-9 * std::max(1.0, max_cd);

    if (!extensible) return probe;
    probe.tails_probed = true;

    const int K = 10;  // factor 2^10 > 1e3
    double base = std::max({1.0, std::abs(range.lo), std::abs(range.hi)});
    double tail_sign[2] = {0.0, 0.0};
    bool tail_diverges[2] = {false, false};
    for (int side = 0; side < 2; ++side) {
        double sgn = side == 0 ? -1.0 : 1.0;
        std::vector<double> cs;
        try {
            for (int k = 0; k <= K; ++k) cs.push_back(c(sgn * base * std::pow(2.0, k)).first);
        } catch (const DomainError&) {
            probe.tails_probed = false;
            return probe;
        }
        double c0 = std::abs(cs.front()), cm = std::abs(cs[K / 2]), cK = std::abs(cs.back());
        tail_diverges[side] = cK >= 1.0 && cK >= 4.0 * cm && (cm >= 2.0 * c0 || cm >= 1.0);
        tail_sign[side] = cs.back() < 0 ? -1.0 : 1.0;
    }
    probe.diverges = tail_diverges[0] && tail_diverges[1] && tail_sign[0] * tail_sign[1] < 0;
    return probe;
}

bool expression_backed(const SurfaceProfile& p) {
    return !p.theta.is_tabulated() && !p.alpha.is_tabulated() && !p.beta.is_tabulated() &&
           !p.gamma.is_tabulated();
}

double surface_scale(const SurfaceProfile& profile, const GridSpec& grid) {
    double m = 1.0;
    for (std::size_t j = 0; j < grid.nt; ++j)
        for (std::size_t i = 0; i < grid.ns; ++i) {
            Point3 p = evaluate(profile, grid.s_at(i), grid.t_at(j));
            m = std::max({m, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
        }
    return m;
}

}  // namespace

CoplanarFamily coplanar_ruling_family(const SurfaceProfile& profile,
                                      const std::vector<double>& t_samples) {
    if (t_samples.size() < 3) throw Error("coplanar-family test needs at least 3 samples");

    CoplanarFamily fam;
    std::vector<Vec3> dirs;
    dirs.reserve(t_samples.size());
    for (double t : t_samples) dirs.push_back(normalized(ruling_tangent(profile, t)));

    double best = 0.0;
    std::size_t bi = 0, bj = 1;
    for (std::size_t i = 0; i < dirs.size(); ++i)
        for (std::size_t j = i + 1; j < dirs.size(); ++j) {
            double c = norm(cross(dirs[i], dirs[j]));
            if (c > best) {
                best = c;
                bi = i;
                bj = j;
            }
        }

    if (best < 1e-12) {
        // All tangents parallel: the rulings lie in one plane through the
        // common direction; fit it through the base points.
        fam.parallel_directions = true;
        Vec3 d = dirs.front();
        Point3 p0 = evaluate(profile, 0.0, t_samples.front());
        Vec3 vbest{0, 0, 0};
        double spread = 0.0;
        for (double t : t_samples) {
            Vec3 v = evaluate(profile, 0.0, t) - p0;
            double c = norm(cross(d, v));
            if (c > spread) {
                spread = c;
                vbest = v;
            }
        }
        Vec3 n;
        if (spread < 1e-12) {
            // Every ruling is the same line; any plane through it works.
            n = normalized(Vec3{-d.y, d.x, 0.0});
        } else {
            n = normalized(cross(d, vbest));
            double scale = 1.0 + norm(p0);
            for (double t : t_samples) {
                Vec3 v = evaluate(profile, 0.0, t) - p0;
                if (std::abs(dot(v, n)) > 1e-8 * scale) return fam;  // not coplanar
            }
        }
        double res = 0.0;
        for (const Vec3& dir : dirs) res = std::max(res, std::abs(dot(dir, n)));
        fam.direction_residual = res;
        fam.normal = n;
        return fam;
    }

    Vec3 n = normalized(cross(dirs[bi], dirs[bj]));
    double res = 0.0;
    for (const Vec3& dir : dirs) res = std::max(res, std::abs(dot(dir, n)));
    fam.direction_residual = res;
    if (res < 1e-8) fam.normal = n;
    return fam;
}

std::optional<Vec3> is_ruling_coplanar_family(const SurfaceProfile& profile,
                                              const std::vector<double>& t_samples) {
    return coplanar_ruling_family(profile, t_samples).normal;
}

namespace {

Classification finish_tilted(const SurfaceProfile& profile, Classification cls, double x0,
                             double y0, std::optional<double> const_theta, const Vec3& n,
                             const ClassifyOptions& opts) {
    auto c = [&](double t) {
        auto [g, gd] = profile.gamma.eval_with_derivative(t);
        auto [a, ad] = profile.alpha.eval_with_derivative(t);
        auto [b, bd] = profile.beta.eval_with_derivative(t);
        return std::make_pair(g - y0 * a + x0 * b, gd - y0 * ad + x0 * bd);
    };
    OffsetProbe probe = probe_offsets(c, profile.t_range, expression_backed(profile));
    cls.certificate.offset_min = probe.c_min;
    cls.certificate.offset_max = probe.c_max;
    cls.certificate.offset_derivative_min = probe.min_abs_derivative;
    cls.certificate.offsets_diverge = probe.diverges;
    cls.certificate.tails_probed = probe.tails_probed;

    bool strict = probe.monotone && (probe.diverges || !probe.tails_probed);
    if (!strict) {
        cls.kind = Classification::Kind::WeakHelicoid;
        cls.plane_normal = orient_normal(n);
        cls.certificate.note = probe.monotone
                                   ? "plane offsets do not sweep all of space"
                                   : "plane-offset map is not strictly monotone on the range";
        return cls;
    }
    if (!probe.tails_probed)
        cls.certificate.note = "strict on the declared range; tails not extensible";

    ProfileFunction theta_rec = ProfileFunction::constant(0.0);
    if (const_theta) {
        double th = *const_theta;
        const double pi = std::numbers::pi;
        th -= pi * std::floor(th / pi);
        theta_rec = ProfileFunction::constant(th);
    } else {
        const std::size_t nrec = opts.recovery_samples;
        double th0 = profile.theta.value(profile.t_range.lo);
        const double pi = std::numbers::pi;
        double shift = pi * std::floor(th0 / pi);
        std::vector<std::pair<double, double>> tab(nrec + 1);
        for (std::size_t i = 0; i <= nrec; ++i) {
            double t = profile.t_range.lerp(double(i) / nrec);
            tab[i] = {c(t).first, profile.theta.value(t) - shift};
        }
        theta_rec = ProfileFunction::tabulated(std::move(tab));
    }

    GridSpec grid = GridSpec::from_profile(profile, opts.agreement_grid, opts.agreement_grid);
    double agreement = 0.0;
    for (std::size_t j = 0; j < grid.nt; ++j)
        for (std::size_t i = 0; i < grid.ns; ++i) {
            Point3 p = evaluate(profile, grid.s_at(i), grid.t_at(j));
            double that = p.z - y0 * p.x + x0 * p.y;
            double th = theta_rec.value(that);
            agreement = std::max(
                agreement, std::abs((p.x - x0) * std::cos(th) + (p.y - y0) * std::sin(th)));
        }
    cls.certificate.surface_agreement = agreement;

    cls.kind = Classification::Kind::HelicoidTilted;
    cls.x0 = x0;
    cls.y0 = y0;
    cls.theta = std::move(theta_rec);
    return cls;
}

Classification finish_vertical(const SurfaceProfile& profile, Classification cls, double a,
                               double b, const Vec3& n, const ClassifyOptions& opts) {
    auto c = [&](double t) {
        auto [av, ad] = profile.alpha.eval_with_derivative(t);
        auto [bv, bd] = profile.beta.eval_with_derivative(t);
        return std::make_pair(-b * av + a * bv, -b * ad + a * bd);
    };
    OffsetProbe probe = probe_offsets(c, profile.t_range, expression_backed(profile));
    cls.certificate.offset_min = probe.c_min;
    cls.certificate.offset_max = probe.c_max;
    cls.certificate.offset_derivative_min = probe.min_abs_derivative;
    cls.certificate.offsets_diverge = probe.diverges;
    cls.certificate.tails_probed = probe.tails_probed;

    bool strict = probe.monotone && (probe.diverges || !probe.tails_probed);
    if (!strict) {
        cls.kind = Classification::Kind::WeakHelicoid;
        cls.plane_normal = orient_normal(n);
        cls.certificate.note = probe.monotone
                                   ? "plane offsets do not sweep all of space"
                                   : "plane-offset map is not strictly monotone on the range";
        return cls;
    }

    auto quad = [&](double x, double y) {
        return -a * b * x * x + (a * a - b * b) * x * y + a * b * y * y;
    };

    const std::size_t nrec = opts.recovery_samples;
    std::vector<std::pair<double, double>> tab;
    tab.reserve(nrec + 1);
    for (std::size_t i = 0; i <= nrec; ++i) {
        double t = profile.t_range.lerp(double(i) / nrec);
        double av = profile.alpha.value(t);
        double bv = profile.beta.value(t);
        double w = c(t).first;
        if (!tab.empty() && std::abs(w - tab.back().first) < 1e-12) continue;
        tab.emplace_back(w, profile.gamma.value(t) - quad(av, bv));
    }
    ProfileFunction g_rec = ProfileFunction::tabulated(std::move(tab));

    GridSpec grid = GridSpec::from_profile(profile, opts.agreement_grid, opts.agreement_grid);
    double agreement = 0.0;
    for (std::size_t j = 0; j < grid.nt; ++j)
        for (std::size_t i = 0; i < grid.ns; ++i) {
            Point3 p = evaluate(profile, grid.s_at(i), grid.t_at(j));
            double w = -b * p.x + a * p.y;
            agreement = std::max(agreement, std::abs(quad(p.x, p.y) + g_rec.value(w) - p.z));
        }
    cls.certificate.surface_agreement = agreement;

    cls.kind = Classification::Kind::HelicoidVertical;
    cls.a = a;
    cls.b = b;
    cls.g = std::move(g_rec);
    return cls;
}

}  // namespace

Classification classify(const SurfaceProfile& profile, const ClassifyOptions& opts) {
    Classification cls;

    GridSpec pre = GridSpec::from_profile(profile, 33, 65);
    cls.immersed = scan_non_immersed(profile, pre, opts.tol).empty();

    std::vector<double> ts(opts.direction_samples);
    for (std::size_t i = 0; i < ts.size(); ++i)
        ts[i] = profile.t_range.lerp(double(i) / double(ts.size() - 1));

    if (auto meet = ruling_intersection_probe(profile, ts, opts.tol)) {
        cls.kind = Classification::Kind::ContactPlane;
        cls.through = *meet;
        Plane3 cp = contact_plane_at(*meet);
        GridSpec grid = GridSpec::from_profile(profile, opts.agreement_grid, opts.agreement_grid);
        double agreement = 0.0;
        for (std::size_t j = 0; j < grid.nt; ++j)
            for (std::size_t i = 0; i < grid.ns; ++i)
                agreement = std::max(agreement, std::abs(cp.signed_distance(evaluate(
                                                    profile, grid.s_at(i), grid.t_at(j)))));
        cls.certificate.surface_agreement = agreement;
        return cls;
    }

    CoplanarFamily fam = coplanar_ruling_family(profile, ts);
    cls.certificate.direction_residual = fam.direction_residual;
    if (!fam.normal) {
        cls.kind = Classification::Kind::NonHelicoid;
        cls.certificate.note = "ruling tangents are not coplanar";
        return cls;
    }
    Vec3 n = *fam.normal;

    if (fam.parallel_directions) {
        // The surface lies in a single vertical plane; canonically a tilted
        // form with constant theta through the foot point of its projection.
        ProjectedRuling r0 = projected_ruling(profile, 0.5 * (profile.t_range.lo +
                                                              profile.t_range.hi));
        double x0 = r0.line2.offset * std::cos(r0.line2.angle);
        double y0 = r0.line2.offset * std::sin(r0.line2.angle);
        return finish_tilted(profile, std::move(cls), x0, y0, r0.line2.angle,
                             Vec3{-y0, x0, 1.0}, opts);
    }

    if (std::abs(n.z) > 1e-9) {
        double x0 = n.y / n.z;
        double y0 = -n.x / n.z;
        double res = 0.0;
        for (double t : ts) {
            ProjectedRuling r = projected_ruling(profile, t);
            res = std::max(res,
                           std::abs(x0 * std::cos(r.theta) + y0 * std::sin(r.theta) - r.delta));
        }
        cls.certificate.common_point_residual = res;
        GridSpec grid = GridSpec::from_profile(profile, 9, 9);
        if (res > 1e-6 * surface_scale(profile, grid)) {
            // Should not happen for genuine Legendrian rulings; report the
            // family without a canonical form.
            cls.kind = Classification::Kind::WeakHelicoid;
            cls.plane_normal = orient_normal(n);
            cls.certificate.note = "rulings do not pass through a common projected point";
            return cls;
        }
        return finish_tilted(profile, std::move(cls), x0, y0, std::nullopt, n, opts);
    }

    double len = std::hypot(n.x, n.y);
    double a = n.y / len;
    double b = -n.x / len;
    if (a < -1e-12 || (std::abs(a) <= 1e-12 && b < 0)) {
        a = -a;
        b = -b;
    }
    return finish_vertical(profile, std::move(cls), a, b, n, opts);
}

SurfaceProfile build_vertical(double a, double b, const ProfileFunction& g, Interval t_range,
                              Interval s_range) {
    if (std::abs(a * a + b * b - 1.0) > 1e-9)
        throw NormalizationError("build_vertical requires a^2 + b^2 = 1");
    double theta0 = std::atan2(a, -b);
    SurfaceProfile p{
        ProfileFunction::constant(theta0),
        ProfileFunction::from_tree(make_binary(Expr::Kind::Mul, make_number(-b), make_var())),
        ProfileFunction::from_tree(make_binary(Expr::Kind::Mul, make_number(a), make_var())),
        g,
        t_range,
        s_range,
        Topology::Band};
    return p;
}

SurfaceProfile build_tilted(double x0, double y0, const ProfileFunction& theta, Interval t_range,
                            Interval s_range) {
    SurfaceProfile p{theta,
                     ProfileFunction::constant(x0),
                     ProfileFunction::constant(y0),
                     ProfileFunction::from_tree(make_var()),
                     t_range,
                     s_range,
                     Topology::Band};
    return p;
}

SingularFreeResult singular_free_tilted(const ProfileFunction& theta, Interval t_range) {
    SingularFreeResult res;
    const std::size_t n = 2048;
    double min_d = std::numeric_limits<double>::infinity();
    std::size_t argmin = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        double d = theta.derivative(t_range.lerp(double(i) / n));
        if (d < min_d) {
            min_d = d;
            argmin = i;
        }
    }

    // Ternary-search refinement around the sampled minimum (first
    // derivatives only; no smoothness assumption beyond continuity).
    double lo = t_range.lerp(double(argmin > 0 ? argmin - 1 : 0) / n);
    double hi = t_range.lerp(double(std::min(argmin + 1, n)) / n);
    for (int it = 0; it < 100; ++it) {
        double m1 = lo + (hi - lo) / 3.0;
        double m2 = hi - (hi - lo) / 3.0;
        if (theta.derivative(m1) <= theta.derivative(m2))
            hi = m2;
        else
            lo = m1;
    }
    double t_star = 0.5 * (lo + hi);
    double d_star = theta.derivative(t_star);
    if (d_star < min_d) {
        min_d = d_star;
    } else {
        t_star = t_range.lerp(double(argmin) / n);
    }

    res.min_theta_d = min_d;
    if (min_d >= -1e-12) return res;
    res.singular_free = false;
    res.witness_t = t_star;
    res.witness_s = std::sqrt(-1.0 / min_d);
    return res;
}

}  // namespace pmin

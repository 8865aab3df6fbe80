#include "pmin/profile.hpp"

#include <algorithm>
#include <cmath>

namespace pmin {

ProfileFunction ProfileFunction::parse(const std::string& src) {
    return from_tree(parse_expression_tree(src));
}

ProfileFunction ProfileFunction::from_tree(ExprPtr body) {
    ProfileFunction f;
    f.body_ = std::move(body);
    f.dbody_ = differentiate(f.body_);
    return f;
}

ProfileFunction ProfileFunction::constant(double c) {
    return from_tree(make_number(c));
}

ProfileFunction ProfileFunction::tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw Error("tabulated profile needs at least two samples");
    std::sort(samples.begin(), samples.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    ProfileFunction f;
    f.ts_.reserve(samples.size());
    f.fs_.reserve(samples.size());
    for (const auto& [t, v] : samples) {
        if (!f.ts_.empty() && !(t > f.ts_.back()))
            throw Error("tabulated profile has duplicate abscissa t=" + std::to_string(t));
        f.ts_.push_back(t);
        f.fs_.push_back(v);
    }
    return f;
}

namespace {

// Value and derivative of the Lagrange polynomial through up to four nodes.
// Order degrades near short tables; evaluation outside [ts.front(),
// ts.back()] extrapolates with the boundary polynomial.
std::pair<double, double> local_cubic(const std::vector<double>& ts,
                                      const std::vector<double>& fs, double t) {
    std::size_t n = ts.size();
    std::size_t hi = std::upper_bound(ts.begin(), ts.end(), t) - ts.begin();
    std::size_t i = hi == 0 ? 0 : hi - 1;          // interval index [i, i+1)
    if (i >= n - 1) i = n - 2;

    std::size_t span = std::min<std::size_t>(4, n);
    std::size_t first = i == 0 ? 0 : i - 1;
    if (first + span > n) first = n - span;

    double value = 0.0;
    double deriv = 0.0;
    for (std::size_t j = first; j < first + span; ++j) {
        // Lagrange basis L_j and its derivative at t.
        double lj = 1.0;
        for (std::size_t k = first; k < first + span; ++k) {
            if (k == j) continue;
            lj *= (t - ts[k]) / (ts[j] - ts[k]);
        }
        double dlj = 0.0;
        for (std::size_t m = first; m < first + span; ++m) {
            if (m == j) continue;
            double p = 1.0 / (ts[j] - ts[m]);
            for (std::size_t k = first; k < first + span; ++k) {
                if (k == j || k == m) continue;
                p *= (t - ts[k]) / (ts[j] - ts[k]);
            }
            dlj += p;
        }
        value += fs[j] * lj;
        deriv += fs[j] * dlj;
    }
    return {value, deriv};
}

}  // namespace

double ProfileFunction::value(double t) const {
    if (is_tabulated()) return local_cubic(ts_, fs_, t).first;
    return eval_expression(*body_, t);
}

double ProfileFunction::derivative(double t) const {
    if (is_tabulated()) return local_cubic(ts_, fs_, t).second;
    return eval_expression(*dbody_, t);
}

std::pair<double, double> ProfileFunction::eval_with_derivative(double t) const {
    if (is_tabulated()) return local_cubic(ts_, fs_, t);
    return {eval_expression(*body_, t), eval_expression(*dbody_, t)};
}

std::string ProfileFunction::source() const {
    if (is_tabulated()) return {};
    return print_expression(*body_);
}

void SurfaceProfile::validate() const {
    if (!(t_range.lo < t_range.hi)) throw Error("t_range must be non-degenerate");
    if (!(s_range.lo < s_range.hi)) throw Error("s_range must be non-degenerate");
    if (topology == Topology::Annulus) {
        const ProfileFunction* fs[4] = {&theta, &alpha, &beta, &gamma};
        const char* names[4] = {"theta", "alpha", "beta", "gamma"};
        for (int i = 0; i < 4; ++i) {
            auto [va, da] = fs[i]->eval_with_derivative(t_range.lo);
            auto [vb, db] = fs[i]->eval_with_derivative(t_range.hi);
            if (std::abs(va - vb) > 1e-9 || std::abs(da - db) > 1e-9)
                throw Error(std::string("annulus topology requires t-periodic ") + names[i]);
        }
    }
}

std::pair<ProfileFunction, ProfileFunction> alpha_beta_from_delta_xi(
    const ProfileFunction& theta, const ProfileFunction& delta,
    const ProfileFunction& xi, const Interval& t_range) {
    using K = Expr::Kind;
    if (!theta.is_tabulated() && !delta.is_tabulated() && !xi.is_tabulated()) {
        ExprPtr th = theta.tree();
        ExprPtr c = make_unary(K::Cos, th);
        ExprPtr s = make_unary(K::Sin, th);
        ExprPtr alpha = make_binary(K::Add, make_binary(K::Mul, delta.tree(), c),
                                    make_binary(K::Mul, xi.tree(), s));
        ExprPtr beta = make_binary(K::Sub, make_binary(K::Mul, delta.tree(), s),
                                   make_binary(K::Mul, xi.tree(), c));
        return {ProfileFunction::from_tree(alpha), ProfileFunction::from_tree(beta)};
    }
    const std::size_t n = 4096;
    std::vector<std::pair<double, double>> as(n + 1), bs(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        double t = t_range.lerp(static_cast<double>(i) / n);
        double th = theta.value(t);
        double d = delta.value(t);
        double x = xi.value(t);
        as[i] = {t, d * std::cos(th) + x * std::sin(th)};
        bs[i] = {t, d * std::sin(th) - x * std::cos(th)};
    }
    return {ProfileFunction::tabulated(std::move(as)), ProfileFunction::tabulated(std::move(bs))};
}

}  // namespace pmin

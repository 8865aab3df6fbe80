#include "pmin/profile_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pmin {

namespace {

using nlohmann::json;

ProfileFunction function_from_json(const json& j, const std::string& key) {
    if (j.is_string()) {
        try {
            return ProfileFunction::parse(j.get<std::string>());
        } catch (const SyntaxError& e) {
            throw Error("field \"" + key + "\": " + e.what());
        }
    }
    if (j.is_number()) return ProfileFunction::constant(j.get<double>());
    if (j.is_array()) {
        std::vector<std::pair<double, double>> samples;
        samples.reserve(j.size());
        for (const auto& row : j) {
            if (!row.is_array() || row.size() != 2)
                throw Error("field \"" + key + "\": table rows must be [t, f] pairs");
            samples.emplace_back(row[0].get<double>(), row[1].get<double>());
        }
        return ProfileFunction::tabulated(std::move(samples));
    }
    throw Error("field \"" + key + "\" must be an expression string, number, or sample table");
}

Interval interval_from_json(const json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 2)
        throw Error("field \"" + key + "\" must be [lo, hi]");
    Interval r{j[0].get<double>(), j[1].get<double>()};
    if (!(r.lo < r.hi)) throw Error("field \"" + key + "\": lo must be < hi");
    return r;
}

json function_to_json(const ProfileFunction& f) {
    if (!f.is_tabulated()) return f.source();
    json rows = json::array();
    const auto& ts = f.table_ts();
    const auto& fs = f.table_fs();
    for (std::size_t i = 0; i < ts.size(); ++i) rows.push_back({ts[i], fs[i]});
    return rows;
}

}  // namespace

SurfaceProfile parse_profile_text(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(origin + ": " + e.what());
    }
    if (!doc.is_object()) throw Error(origin + ": profile document must be a JSON object");

    try {
        if (!doc.contains("theta")) throw Error("missing field \"theta\"");
        if (!doc.contains("gamma")) throw Error("missing field \"gamma\"");
        if (!doc.contains("t_range")) throw Error("missing field \"t_range\"");
        if (!doc.contains("s_range")) throw Error("missing field \"s_range\"");

        ProfileFunction theta = function_from_json(doc["theta"], "theta");
        ProfileFunction gamma = function_from_json(doc["gamma"], "gamma");
        Interval t_range = interval_from_json(doc["t_range"], "t_range");
        Interval s_range = interval_from_json(doc["s_range"], "s_range");

        ProfileFunction alpha = ProfileFunction::constant(0.0);
        ProfileFunction beta = ProfileFunction::constant(0.0);
        bool has_ab = doc.contains("alpha") || doc.contains("beta");
        bool has_dx = doc.contains("delta") || doc.contains("xi");
        if (has_ab && has_dx)
            throw Error("give either alpha/beta or delta/xi, not both");
        if (has_ab) {
            if (!doc.contains("alpha") || !doc.contains("beta"))
                throw Error("alpha and beta must be given together");
            alpha = function_from_json(doc["alpha"], "alpha");
            beta = function_from_json(doc["beta"], "beta");
        } else if (has_dx) {
            if (!doc.contains("delta") || !doc.contains("xi"))
                throw Error("delta and xi must be given together");
            ProfileFunction delta = function_from_json(doc["delta"], "delta");
            ProfileFunction xi = function_from_json(doc["xi"], "xi");
            std::tie(alpha, beta) = alpha_beta_from_delta_xi(theta, delta, xi, t_range);
        } else {
            throw Error("missing alpha/beta (or delta/xi)");
        }

        Topology topology = Topology::Band;
        if (doc.contains("topology")) {
            std::string s = doc["topology"].get<std::string>();
            if (s == "band")
                topology = Topology::Band;
            else if (s == "annulus")
                topology = Topology::Annulus;
            else
                throw Error("field \"topology\" must be \"band\" or \"annulus\"");
        }

        SurfaceProfile profile{std::move(theta), std::move(alpha), std::move(beta),
                               std::move(gamma), t_range, s_range, topology};
        profile.validate();
        return profile;
    } catch (const Error& e) {
        throw Error(origin + ": " + e.what());
    }
}

SurfaceProfile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(path + ": cannot open profile file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_profile_text(ss.str(), path);
}

std::string profile_to_json_text(const SurfaceProfile& profile) {
    json doc;
    doc["theta"] = function_to_json(profile.theta);
    doc["alpha"] = function_to_json(profile.alpha);
    doc["beta"] = function_to_json(profile.beta);
    doc["gamma"] = function_to_json(profile.gamma);
    doc["t_range"] = {profile.t_range.lo, profile.t_range.hi};
    doc["s_range"] = {profile.s_range.lo, profile.s_range.hi};
    doc["topology"] = profile.topology == Topology::Annulus ? "annulus" : "band";
    return doc.dump(2);
}

}  // namespace pmin

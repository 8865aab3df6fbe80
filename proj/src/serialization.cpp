#include "pmin/serialization.hpp"

#include <json.hpp>

namespace pmin {

namespace {

using nlohmann::json;

const char* properness_name(Properness p) {
    switch (p) {
        case Properness::Proper: return "proper";
        case Properness::NotProper: return "not_proper";
        case Properness::Inconclusive: return "inconclusive";
    }
    return "?";
}

json point_json(const Point3& p) { return json{p.x, p.y, p.z}; }

json function_json(const ProfileFunction& f) {
    if (!f.is_tabulated()) return f.source();
    json rows = json::array();
    for (std::size_t i = 0; i < f.table_ts().size(); ++i)
        rows.push_back({f.table_ts()[i], f.table_fs()[i]});
    return rows;
}

}  // namespace

std::string analysis_to_json_text(const AnalysisReport& rep) {
    json doc;
    doc["grid"] = {{"ns", rep.grid.ns},
                   {"nt", rep.grid.nt},
                   {"s_range", {rep.grid.s_range.lo, rep.grid.s_range.hi}},
                   {"t_range", {rep.grid.t_range.lo, rep.grid.t_range.hi}}};

    json ni = json::array();
    for (const auto& p : rep.non_immersed_points)
        ni.push_back({{"s", p.s}, {"t", p.t}, {"r_a", p.r_a}, {"r_b", p.r_b},
                      {"whole_ruling", p.whole_ruling}});
    doc["non_immersed"] = ni;

    json sp = json::array();
    for (const auto& p : rep.singular_points)
        sp.push_back({{"s", p.s}, {"t", p.t}, {"residual", p.residual}});
    doc["singular"] = sp;

    json iv = json::array();
    for (const auto& v : rep.injectivity_violations)
        iv.push_back({{"t1", v.t1},
                      {"t2", v.t2},
                      {"kind", v.kind == InjectivityViolation::Kind::CrossGapZero
                                   ? "cross_gap_zero"
                                   : "coincident_same_height"},
                      {"value", v.value}});
    doc["injectivity"] = {{"pairs_tested", rep.injectivity_pairs_tested}, {"violations", iv}};

    json ev = json::array();
    for (const auto& [t, r] : rep.properness.evidence) ev.push_back({{"t", t}, {"r", r}});
    doc["properness"] = {{"verdict", properness_name(rep.properness.verdict)},
                         {"note", rep.properness.note},
                         {"evidence", ev}};

    if (rep.degenerate_contact_plane)
        doc["ruling_meeting_point"] = point_json(*rep.degenerate_contact_plane);
    else
        doc["ruling_meeting_point"] = nullptr;

    doc["warnings"] = rep.warnings;
    return doc.dump(2);
}

std::string classification_to_json_text(const Classification& cls) {
    json doc;
    switch (cls.kind) {
        case Classification::Kind::ContactPlane:
            doc["kind"] = "contact_plane";
            doc["through"] = point_json(cls.through);
            break;
        case Classification::Kind::HelicoidVertical:
            doc["kind"] = "helicoid_vertical";
            doc["a"] = cls.a;
            doc["b"] = cls.b;
            if (cls.g) doc["g"] = function_json(*cls.g);
            break;
        case Classification::Kind::HelicoidTilted:
            doc["kind"] = "helicoid_tilted";
            doc["x0"] = cls.x0;
            doc["y0"] = cls.y0;
            if (cls.theta) doc["theta"] = function_json(*cls.theta);
            break;
        case Classification::Kind::WeakHelicoid:
            doc["kind"] = "weak_helicoid";
            doc["plane_normal"] = {cls.plane_normal.x, cls.plane_normal.y, cls.plane_normal.z};
            break;
        case Classification::Kind::NonHelicoid:
            doc["kind"] = "non_helicoid";
            break;
    }
    doc["immersed"] = cls.immersed;
    doc["certificate"] = {{"direction_residual", cls.certificate.direction_residual},
                          {"common_point_residual", cls.certificate.common_point_residual},
                          {"surface_agreement", cls.certificate.surface_agreement},
                          {"offset_min", cls.certificate.offset_min},
                          {"offset_max", cls.certificate.offset_max},
                          {"offset_derivative_min", cls.certificate.offset_derivative_min},
                          {"offsets_diverge", cls.certificate.offsets_diverge},
                          {"tails_probed", cls.certificate.tails_probed},
                          {"note", cls.certificate.note}};
    return doc.dump(2);
}

std::string residual_report_to_json_text(const ResidualReport& rep, double legendrian) {
    json doc;
    doc["legendrian_max"] = legendrian;
    json pde;
    pde["h"] = rep.h;
    pde["max_residual"] = rep.max_residual;
    pde["max_residual_h2"] = rep.max_residual_h2 ? json(*rep.max_residual_h2) : json(nullptr);
    pde["max_residual_h4"] = rep.max_residual_h4 ? json(*rep.max_residual_h4) : json(nullptr);
    pde["ratio_1"] = rep.ratio_1 ? json(*rep.ratio_1) : json(nullptr);
    pde["ratio_2"] = rep.ratio_2 ? json(*rep.ratio_2) : json(nullptr);
    pde["total_nodes"] = rep.total_nodes;
    pde["excluded_nodes"] = rep.excluded_nodes;
    pde["exact_zero"] = rep.exact_zero;
    doc["pde"] = pde;
    return doc.dump(2);
}

std::string golden_report_to_json_text(const GoldenReport& rep) {
    json doc;
    json entries = json::array();
    for (const auto& e : rep.entries)
        entries.push_back({{"example", e.example},
                           {"check", e.check},
                           {"passed", e.passed},
                           {"value", e.value},
                           {"detail", e.detail}});
    doc["entries"] = entries;
    doc["all_passed"] = rep.all_passed();
    return doc.dump(2);
}

std::string containment_to_json_text(const ContainmentReport& rep) {
    json doc;
    switch (rep.kind) {
        case ContainmentReport::Kind::ContainedAbove: doc["kind"] = "contained_above"; break;
        case ContainmentReport::Kind::ContainedBelow: doc["kind"] = "contained_below"; break;
        case ContainmentReport::Kind::Straddles: doc["kind"] = "straddles"; break;
    }
    doc["min_distance"] = rep.min_distance;
    doc["max_distance"] = rep.max_distance;
    json wa = json::array(), wb = json::array();
    for (const auto& p : rep.witnesses_above) wa.push_back(point_json(p));
    for (const auto& p : rep.witnesses_below) wb.push_back(point_json(p));
    doc["witnesses_above"] = wa;
    doc["witnesses_below"] = wb;
    doc["halfspace_theorem_violation"] = rep.theorem_d_violation;
    return doc.dump(2);
}

}  // namespace pmin

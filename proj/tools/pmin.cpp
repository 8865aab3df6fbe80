#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pmin/mesh_io.hpp"
#include "pmin/profile_io.hpp"
#include "pmin/serialization.hpp"
#include "pmin/verifier.hpp"

namespace {

using namespace pmin;

struct CommonOpts {
    std::string profile_path;
    std::size_t ns = 64;
    std::size_t nt = 64;
    std::vector<double> s_range;
    std::vector<double> t_range;
    std::string output;
    std::string format;
    Tolerances tol;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_profile = true) {
    if (needs_profile)
        cmd->add_option("profile", o.profile_path, "profile JSON file")->required();
    cmd->add_option("--ns", o.ns, "grid resolution in s");
    cmd->add_option("--nt", o.nt, "grid resolution in t");
    cmd->add_option("--s-range", o.s_range, "override s range (two values)")->expected(2);
    cmd->add_option("--t-range", o.t_range, "override t range (two values)")->expected(2);
    cmd->add_option("--tol-singular", o.tol.singular, "singular-root residual tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol-parallel", o.tol.parallel, "parallel-line sine tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("-o,--output", o.output, "output file (default stdout)");
    cmd->add_option("--format", o.format, "output format");
}

GridSpec make_grid(const SurfaceProfile& profile, const CommonOpts& o, bool extend_s) {
    GridSpec grid = GridSpec::from_profile(profile, o.ns, o.nt);
    // Scans default to a widened s window: completeness extends rulings to
    // whole lines, so interesting points often sit outside the drawn patch.
    if (extend_s && o.s_range.empty()) grid = grid.expanded_s(2.0);
    if (!o.s_range.empty()) grid.s_range = {o.s_range[0], o.s_range[1]};
    if (!o.t_range.empty()) grid.t_range = {o.t_range[0], o.t_range[1]};
    if (!(grid.s_range.lo < grid.s_range.hi) || !(grid.t_range.lo < grid.t_range.hi))
        throw Error("grid ranges must be non-degenerate");
    return grid;
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw Error(output + ": cannot open output file");
    out << text;
}

int run_eval(const CommonOpts& o) {
    SurfaceProfile profile = load_profile(o.profile_path);
    GridSpec grid = make_grid(profile, o, false);
    std::ostringstream ss;
    if (o.format == "json") {
        ss << "[\n";
        for (std::size_t j = 0; j < grid.nt; ++j)
            for (std::size_t i = 0; i < grid.ns; ++i) {
                double s = grid.s_at(i), t = grid.t_at(j);
                Point3 p = evaluate(profile, s, t);
                char buf[256];
                std::snprintf(buf, sizeof buf,
                              "  {\"s\": %.17g, \"t\": %.17g, \"x\": %.17g, \"y\": %.17g, "
                              "\"z\": %.17g}%s\n",
                              s, t, p.x, p.y, p.z,
                              (j + 1 == grid.nt && i + 1 == grid.ns) ? "" : ",");
                ss << buf;
            }
        ss << "]\n";
    } else {
        write_csv(profile, grid, ss);
    }
    emit(ss.str(), o.output);
    return 0;
}

int run_analyze(const CommonOpts& o) {
    SurfaceProfile profile = load_profile(o.profile_path);
    GridSpec grid = make_grid(profile, o, true);
    AnalysisReport rep = analyze(profile, grid, o.tol);
    emit(analysis_to_json_text(rep), o.output);
    return 0;
}

int run_classify(const CommonOpts& o) {
    SurfaceProfile profile = load_profile(o.profile_path);
    ClassifyOptions opts;
    opts.tol = o.tol;
    Classification cls = classify(profile, opts);
    emit(classification_to_json_text(cls), o.output);
    return 0;
}

int run_mesh(const CommonOpts& o) {
    SurfaceProfile profile = load_profile(o.profile_path);
    GridSpec grid = make_grid(profile, o, false);
    std::ostringstream ss;
    if (o.format == "csv")
        write_csv(profile, grid, ss);
    else
        write_obj(profile, grid, ss);
    emit(ss.str(), o.output);
    return 0;
}

// Rectangle holding the central part of the sampled surface, used to place
// an automatic graph patch for the residual study.
struct AutoPatch {
    Interval x, y, z;
    bool ok = false;
};

AutoPatch auto_patch_box(const SurfaceProfile& profile) {
    AutoPatch box;
    std::vector<double> xs, ys, zs;
    for (int j = 0; j <= 32; ++j)
        for (int i = 0; i <= 32; ++i) {
            Point3 p = evaluate(profile, profile.s_range.lerp(i / 32.0),
                                profile.t_range.lerp(j / 32.0));
            xs.push_back(p.x);
            ys.push_back(p.y);
            zs.push_back(p.z);
        }
    auto central = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        double lo = v[v.size() / 4];
        double hi = v[3 * v.size() / 4];
        if (hi - lo < 1e-6) {
            lo -= 0.5;
            hi += 0.5;
        }
        return Interval{lo, hi};
    };
    box.x = central(xs);
    box.y = central(ys);
    Interval zc = central(zs);
    double pad = 0.5 * (zc.hi - zc.lo) + 1.0;
    box.z = {zs.front() - pad, zs.back() + pad};
    box.ok = box.x.length() > 1e-3 && box.y.length() > 1e-3;
    return box;
}

int run_verify(const CommonOpts& o) {
    SurfaceProfile profile = load_profile(o.profile_path);

    double leg = legendrian_residual(profile);
    bool leg_ok = leg < o.tol.legendrian;

    ClassifyOptions copts;
    copts.tol = o.tol;
    Classification cls = classify(profile, copts);

    ResidualReport rr;
    bool have_patch = false;
    bool pde_ok = true;
    std::string pde_note;
    try {
        AutoPatch box = auto_patch_box(profile);
        if (!box.ok) {
            pde_note = "surface too flat to place a graph patch";
        } else if (cls.kind == Classification::Kind::HelicoidVertical && cls.g) {
            double h = std::min(box.x.length(), box.y.length()) / 24.0;
            rr = pde_residual(GraphPatch::from_vertical(cls.a, cls.b, *cls.g, box.x, box.y, h),
                              o.tol, o.format == "csv");
            have_patch = true;
        } else if (cls.kind == Classification::Kind::HelicoidTilted && cls.theta) {
            double h = std::min(box.x.length(), box.y.length()) / 24.0;
            rr = pde_residual(
                GraphPatch::from_tilted(cls.x0, cls.y0, *cls.theta, box.x, box.y, h, box.z),
                o.tol, o.format == "csv");
            have_patch = true;
        } else {
            pde_note = "no canonical graph form; Legendrian identity covers the surface";
        }
    } catch (const SingularContamination& e) {
        pde_note = e.what();
    }
    if (have_patch && !rr.exact_zero) {
        pde_ok = rr.ratio_1 && rr.ratio_2 && *rr.ratio_1 > 3.0 && *rr.ratio_1 < 5.0 &&
                 *rr.ratio_2 > 3.0 && *rr.ratio_2 < 5.0;
    }

    if (o.format == "csv" && have_patch) {
        std::ostringstream ss;
        ss << "x,y,residual\n";
        for (const auto& row : rr.field) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", row[0], row[1], row[2]);
            ss << buf;
        }
        emit(ss.str(), o.output);
    } else {
        std::string text = residual_report_to_json_text(have_patch ? rr : ResidualReport{}, leg);
        emit(text, o.output);
    }

    if (!leg_ok) {
        std::fprintf(stderr, "FAIL: Legendrian residual %.3e exceeds %.3e\n", leg,
                     o.tol.legendrian);
        return 1;
    }
    if (!pde_ok) {
        std::fprintf(stderr, "FAIL: graph residual does not converge at second order\n");
        return 1;
    }
    if (!pde_note.empty()) std::fprintf(stderr, "note: %s\n", pde_note.c_str());
    return 0;
}

int run_golden(const std::string& dir, const std::string& output) {
    GoldenReport rep = golden_examples(dir);

    std::printf("%-14s %-55s %-6s %s\n", "example", "check", "status", "value");
    for (const auto& e : rep.entries) {
        std::printf("%-14s %-55s %-6s %.3e%s%s\n", e.example.c_str(), e.check.c_str(),
                    e.passed ? "pass" : "FAIL", e.value, e.detail.empty() ? "" : "  ",
                    e.detail.c_str());
    }
    std::printf("%s\n", rep.all_passed() ? "all checks passed" : "FAILURES present");

    if (!output.empty()) emit(golden_report_to_json_text(rep), output);
    return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ruled surface toolkit for the pseudohermitian minimal-surface family"};
    app.require_subcommand(1);

    CommonOpts eval_o, analyze_o, classify_o, verify_o, mesh_o;
    std::string golden_dir = "profiles";
    std::string golden_output;

    add_common(app.add_subcommand("eval", "sample the parametrization on a grid"), eval_o);
    add_common(app.add_subcommand("analyze",
                                  "immersion/singular/injectivity/properness report"),
               analyze_o);
    add_common(app.add_subcommand("classify", "canonical-form classification"), classify_o);
    add_common(app.add_subcommand("verify", "Legendrian and graph-equation residuals"),
               verify_o);
    add_common(app.add_subcommand("mesh", "export an OBJ or CSV mesh"), mesh_o);
    CLI::App* golden = app.add_subcommand("golden", "run the bundled example suite");
    golden->add_option("--profiles", golden_dir, "directory with the bundled profiles");
    golden->add_option("-o,--output", golden_output, "write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("eval")) return run_eval(eval_o);
        if (app.got_subcommand("analyze")) return run_analyze(analyze_o);
        if (app.got_subcommand("classify")) return run_classify(classify_o);
        if (app.got_subcommand("verify")) return run_verify(verify_o);
        if (app.got_subcommand("mesh")) return run_mesh(mesh_o);
        if (app.got_subcommand("golden")) return run_golden(golden_dir, golden_output);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}

#include "pmin/mesh_io.hpp"

#include <cstdio>

namespace pmin {

namespace {

void print17(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

}  // namespace

void write_obj(const SurfaceProfile& profile, const GridSpec& grid, std::ostream& out) {
    for (std::size_t j = 0; j < grid.nt; ++j)
        for (std::size_t i = 0; i < grid.ns; ++i) {
            Point3 p = evaluate(profile, grid.s_at(i), grid.t_at(j));
            out << "v ";
            print17(out, p.x);
            out << ' ';
            print17(out, p.y);
            out << ' ';
            print17(out, p.z);
            out << '\n';
        }
    auto id = [&](std::size_t i, std::size_t j) { return j * grid.ns + i + 1; };
    for (std::size_t j = 0; j + 1 < grid.nt; ++j)
        for (std::size_t i = 0; i + 1 < grid.ns; ++i) {
            out << "f " << id(i, j) << ' ' << id(i + 1, j) << ' ' << id(i + 1, j + 1) << '\n';
            out << "f " << id(i, j) << ' ' << id(i + 1, j + 1) << ' ' << id(i, j + 1) << '\n';
        }
}

void write_csv(const SurfaceProfile& profile, const GridSpec& grid, std::ostream& out) {
    out << "s,t,x,y,z\n";
    for (std::size_t j = 0; j < grid.nt; ++j)
        for (std::size_t i = 0; i < grid.ns; ++i) {
            double s = grid.s_at(i);
            double t = grid.t_at(j);
            Point3 p = evaluate(profile, s, t);
            print17(out, s);
            out << ',';
            print17(out, t);
            out << ',';
            print17(out, p.x);
            out << ',';
            print17(out, p.y);
            out << ',';
            print17(out, p.z);
            out << '\n';
        }
}

}  // namespace pmin

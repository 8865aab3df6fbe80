#pragma once

#include <ostream>

#include "pmin/analyzer.hpp"

namespace pmin {

/// Wavefront OBJ: one vertex per (s, t) grid node, each grid quad split
/// into two triangles. Floats use 17 significant digits.
void write_obj(const SurfaceProfile& profile, const GridSpec& grid, std::ostream& out);

/// CSV with header s,t,x,y,z ('.' decimal separator, 17 significant digits).
void write_csv(const SurfaceProfile& profile, const GridSpec& grid, std::ostream& out);

}  // namespace pmin

#pragma once

#include <string>

#include "pmin/profile.hpp"

namespace pmin {

/// Reads a profile document:
///   {
///     "theta": "<expr>", "alpha": "<expr>", "beta": "<expr>",
///     "gamma": "<expr>",
///     "t_range": [a, b], "s_range": [c, d],
///     "topology": "band" | "annulus"
///   }
/// "delta"/"xi" may replace "alpha"/"beta" (converted via the ruling
/// decomposition). Any function may also be given as a sample table
/// [[t, f], ...]. Throws Error/SyntaxError with the offending key.
SurfaceProfile load_profile(const std::string& path);
SurfaceProfile parse_profile_text(const std::string& text, const std::string& origin);

std::string profile_to_json_text(const SurfaceProfile& profile);

}  // namespace pmin

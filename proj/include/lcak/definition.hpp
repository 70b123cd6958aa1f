#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lcak/chart.hpp"

namespace lcak {

/// Parses a manifold definition document.
///
///   [manifold]   name = ..., dim = 2n, optional coords = a, b, ...
///   [domain]     one open condition per line: lhs > rhs | lhs < rhs | lhs != rhs
///   [metric]     g_i_j = expr (1-based; unspecified entries are 0, symmetric fill)
///   [J]          J_i_j = expr (component J^i_j)
///   [conformal]  f = expr (optional)
///   [sample]     coord = lo, hi (optional sampling box)
///
/// '#' starts a comment. Errors carry the 1-based line number.
ChartManifold parse_definition(std::string_view text);

ChartManifold load_definition(const std::filesystem::path& path);

/// Canonical rendering; parse_definition(serialize_definition(M)) reproduces M.
std::string serialize_definition(const ChartManifold& M);

}  // namespace lcak

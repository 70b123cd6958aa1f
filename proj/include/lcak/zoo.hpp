#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcak/chart.hpp"

namespace lcak {

/// Flags a fixture is expected to show at every sampled point. Foliation
/// flags are unset where the Lee field vanishes or the manifold is not LCaK.
struct ExpectedFlags {
  bool almost_hermitian = true;
  bool lcak = false;
  bool almost_kahler = false;
  std::optional<bool> lee_autoparallel;
  std::optional<bool> leaves_minimal;
};

struct ZooEntry {
  std::string name;
  std::string definition;  // text of manifolds/<name>.lcak
  ExpectedFlags expected;
  std::string provenance;

  ChartManifold manifold() const;
};

const std::vector<ZooEntry>& zoo();
/// nullptr when no entry has that name.
const ZooEntry* find_zoo_entry(const std::string& name);

/// Uniform samples from the chart's sample box, rejecting points that are
/// not admissible (domain plus stencil margin).
///
/// Generator: std::mt19937_64 seeded with `seed`; each coordinate draws one
/// 64-bit word w and uses lo + (hi - lo) * (w >> 11) * 2^-53, coordinates in
/// order. Throws Error after `max_attempts` rejections in a row.
std::vector<Point> sample_points(const ChartManifold& M, std::size_t count, std::uint64_t seed,
                                 std::size_t max_attempts = 100000);

}  // namespace lcak

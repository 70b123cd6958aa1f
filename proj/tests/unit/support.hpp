#pragma once

#include <string>
#include <vector>

#include "lcak/chart.hpp"
#include "lcak/zoo.hpp"

namespace test {

inline lcak::ChartManifold fixture(const std::string& name) {
  const lcak::ZooEntry* e = lcak::find_zoo_entry(name);
  if (!e) throw std::runtime_error("no fixture " + name);
  return e->manifold();
}

inline std::vector<lcak::Point> points(const lcak::ChartManifold& M, std::size_t count, std::uint64_t seed = 11) {
  return lcak::sample_points(M, count, seed);
}

}  // namespace test

#include "lcak/zoo.hpp"

#include <random>
#include <utility>

#include "lcak/definition.hpp"
#include "lcak/errors.hpp"

namespace lcak {

namespace detail {
const std::vector<std::pair<std::string, std::string>>& zoo_sources();
}

namespace {

struct Meta {
  const char* name;
  ExpectedFlags flags;
  const char* provenance;
};

const Meta metas[] = {
    {"paper-example",
     {true, true, false, true, false},
     "Worked example of an LCaK structure on {x1 != 0, x2 > 0}: metric and J verbatim, exponent f = 2 ln x2 "
     "so that df is the canonical Lee form."},
    {"flat-kahler", {true, true, true, std::nullopt, std::nullopt}, "Flat C^2 with the standard complex structure."},
    {"global-conformal",
     {true, true, false, true, false},
     "exp(x1) times flat-kahler; Lee form dx1, flat rescaled metric."},
    {"sphere-plane-kahler",
     {true, true, true, std::nullopt, std::nullopt},
     "Round S^2 times R^2: non-flat Kahler, constant holomorphic sectional curvature block."},
    {"control-sheared",
     {true, true, false, false, false},
     "Negative control for the foliation suite: LCaK with Lee form dx1 whose Lee field is not auto-parallel."},
    {"control-broken",
     {true, false, false, std::nullopt, std::nullopt},
     "Negative control for Lee extraction: dOmega has a component outside omega ^ Omega."},
    {"control-nonclosed",
     {true, false, false, std::nullopt, std::nullopt},
     "Negative control for closedness: dOmega = omega ^ Omega with omega = x1 dx2, d omega != 0."},
};

}  // namespace

ChartManifold ZooEntry::manifold() const { return parse_definition(definition); }

const std::vector<ZooEntry>& zoo() {
  static const std::vector<ZooEntry> entries = [] {
    std::vector<ZooEntry> out;
    for (const Meta& m : metas) {
      for (const auto& [name, text] : detail::zoo_sources()) {
        if (name != m.name) continue;
        out.push_back(ZooEntry{name, text, m.flags, m.provenance});
      }
    }
    return out;
  }();
  return entries;
}

const ZooEntry* find_zoo_entry(const std::string& name) {
  for (const ZooEntry& e : zoo())
    if (e.name == name) return &e;
  return nullptr;
}

std::vector<Point> sample_points(const ChartManifold& M, std::size_t count, std::uint64_t seed,
                                 std::size_t max_attempts) {
  std::mt19937_64 rng(seed);
  const int n = M.dim();
  const auto& box = M.sample_box();
  std::vector<Point> out;
  out.reserve(count);
  std::size_t misses = 0;
  while (out.size() < count) {
    Vec c(n);
    for (int i = 0; i < n; ++i) {
      const SampleRange r = box[static_cast<std::size_t>(i)];
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      c[i] = r.lo + (r.hi - r.lo) * u;
    }
    Point p(c);
    if (M.admissible(p)) {
      out.push_back(std::move(p));
      misses = 0;
    } else if (++misses >= max_attempts) {
      throw Error("sampler: no admissible point found in the sample box of " + M.name());
    }
  }
  return out;
}

}  // namespace lcak

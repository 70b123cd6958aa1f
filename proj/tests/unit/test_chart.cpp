#include <cmath>

#include "doctest.h"
#include "lcak/chart.hpp"
#include "lcak/definition.hpp"
#include "lcak/errors.hpp"
#include "lcak/zoo.hpp"
#include "support.hpp"

using lcak::Point;

namespace {

const char* minimal = R"(
[manifold]
name = tiny
dim = 4

[metric]
g_1_1 = 1
g_2_2 = 1
g_3_3 = 1
g_4_4 = 1

[J]
J_3_1 = 1
J_1_3 = -1
J_4_2 = 1
J_2_4 = -1
)";

int definition_error_line(const std::string& text) {
  try {
    lcak::parse_definition(text);
  } catch (const lcak::DefinitionError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("metric of the example fixture") {
  const auto M = test::fixture("paper-example");
  const lcak::Mat g = M.metric(Point{1, 2, 0, 0});
  CHECK(g(0, 0) == doctest::Approx(0.25));
  CHECK(g(1, 1) == doctest::Approx(0.25));
  CHECK(g(2, 2) == doctest::Approx(64));
  CHECK(g(3, 3) == doctest::Approx(64));
  CHECK(g(0, 1) == 0.0);
  const lcak::Mat g1 = M.metric(Point{1, 1, 0, 0});
  CHECK((g1 - lcak::Mat::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("flat fixture is the identity everywhere") {
  const auto M = test::fixture("flat-kahler");
  for (const Point& p : test::points(M, 5)) CHECK((M.metric(p) - lcak::Mat::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("defaults: coordinates, zero entries and symmetric fill") {
  const auto M = lcak::parse_definition(minimal);
  CHECK(M.coord_names() == std::vector<std::string>{"x1", "x2", "x3", "x4"});
  CHECK(M.dim() == 4);
  CHECK(M.half_dim() == 2);
  CHECK(!M.has_conformal_exponent());
  CHECK_THROWS_AS(M.f(Point{0, 0, 0, 0}), lcak::MissingConformalExponent);
  const auto S = lcak::parse_definition(std::string(minimal) + "\n[conformal]\nf = x1\n");
  CHECK(S.metric(Point{0, 0, 0, 0}) == lcak::Mat::Identity(4, 4));
  CHECK(S.f(Point{0.5, 0, 0, 0}) == 0.5);
}

TEST_CASE("definition errors carry line numbers") {
  const std::string base = minimal;
  CHECK(definition_error_line(base + "[bogus]\n") == 17);
  CHECK(definition_error_line(base + "[conformal]\nf = ln(\n") == 18);
  CHECK(definition_error_line(base + "[conformal]\nf = q7\n") == 18);
  CHECK(definition_error_line(base + "[domain]\nx1 >= 0\n") == 18);
  CHECK(definition_error_line(base + "[sample]\nx1 = 2, 1\n") == 18);
  CHECK_THROWS_AS(lcak::parse_definition("[manifold]\nname = a\ndim = 3\n"), lcak::DefinitionError);
  CHECK_THROWS_AS(lcak::load_definition("/nonexistent/file.lcak"), lcak::DefinitionError);
}

TEST_CASE("serialization round-trips every fixture") {
  for (const auto& e : lcak::zoo()) {
    const auto M = e.manifold();
    const auto again = lcak::parse_definition(lcak::serialize_definition(M));
    CHECK(lcak::serialize_definition(again) == lcak::serialize_definition(M));
    for (const Point& p : test::points(M, 3)) {
      CHECK(again.metric(p) == M.metric(p));
      CHECK(again.complex_structure(p) == M.complex_structure(p));
      CHECK(again.in_domain(p));
    }
  }
}

TEST_CASE("domain and stencil margin") {
  const auto M = test::fixture("paper-example");
  CHECK(M.in_domain(Point{1, 2, 0, 0}));
  CHECK(!M.in_domain(Point{1, 0.05, 0, 0}));
  CHECK(!M.in_domain(Point{0.05, 2, 0, 0}));
  CHECK(M.in_domain(Point{1, 0.1000001, 0, 0}));
  CHECK(!M.admissible(Point{1, 0.1000001, 0, 0}));
  CHECK(M.admissible(Point{1, 0.2, 0, 0}));
}

TEST_CASE("sampler is deterministic and admissible") {
  const auto M = test::fixture("paper-example");
  const auto a = lcak::sample_points(M, 25, 7);
  const auto b = lcak::sample_points(M, 25, 7);
  const auto c = lcak::sample_points(M, 25, 8);
  REQUIRE(a.size() == 25);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].coords == b[i].coords);
    CHECK(M.admissible(a[i]));
    CHECK(a[i][0] >= 0.5);
    CHECK(a[i][0] <= 2.0);
  }
  CHECK(a[0].coords != c[0].coords);
}

TEST_CASE("conformal rescaling multiplies the metric by exp(-f)") {
  const auto M = test::fixture("paper-example");
  const auto T = M.conformally_rescaled();
  const Point p{1.3, 1.7, 0.2, -0.4};
  CHECK((T.metric(p) - std::exp(-M.f(p)) * M.metric(p)).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(T.complex_structure(p) == M.complex_structure(p));
}

TEST_CASE("indefinite metric is rejected") {
  const auto M = lcak::parse_definition(std::string(minimal) + "[conformal]\nf = 0\n");
  CHECK_NOTHROW(lcak::metric_at(M, Point{0, 0, 0, 0}));
  auto text = std::string(minimal);
  text.replace(text.find("g_1_1 = 1"), 9, "g_1_1 = -1");
  const auto N = lcak::parse_definition(text);
  CHECK_THROWS_AS(lcak::metric_at(N, Point{0, 0, 0, 0}), lcak::NotPositiveDefinite);
}

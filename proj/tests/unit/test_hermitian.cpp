#include <cmath>

#include "doctest.h"
#include "lcak/definition.hpp"
#include "lcak/errors.hpp"
#include "lcak/hermitian.hpp"
#include "support.hpp"

using lcak::Point;
using lcak::Vec;

TEST_CASE("almost Hermitian residuals") {
  const auto M = test::fixture("paper-example");
  for (const Point& p : test::points(M, 5)) {
    const auto r = lcak::check_almost_hermitian(M, p);
    CHECK(r.j_squared <= 1e-12 * std::max(1.0, M.complex_structure(p).cwiseAbs().maxCoeff()));
    CHECK(r.compatibility <= 1e-9);
  }
  const auto F = test::fixture("flat-kahler");
  const auto r = lcak::check_almost_hermitian(F, Point{0, 0, 0, 0});
  CHECK(r.j_squared == 0.0);
  CHECK(r.compatibility == 0.0);
}

TEST_CASE("a flipped sign in J is detected") {
  auto text = test::fixture("flat-kahler");
  const std::string src = lcak::serialize_definition(text);
  std::string bad = src;
  const auto at = bad.find("J_1_3 = -1");
  REQUIRE(at != std::string::npos);
  bad.replace(at, 10, "J_1_3 = 1");
  const auto M = lcak::parse_definition(bad);
  CHECK(lcak::check_almost_hermitian(M, Point{0, 0, 0, 0}).j_squared >= 1.0);
}

TEST_CASE("Lee form of the example fixture") {
  const auto M = test::fixture("paper-example");
  const auto d = lcak::extract_lee_form(M, Point{1, 2, 0, 0});
  // canonical omega = (2/x2) dx2, B = 2 x2 d_x2 (symbolic oracle)
  CHECK(d.omega[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::fabs(d.omega[0]) + std::fabs(d.omega[2]) + std::fabs(d.omega[3]) <= 1e-12);
  CHECK(d.B[1] == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(d.normB2 == doctest::Approx(4.0).epsilon(1e-10));
  const auto h = lcak::in_convention(d, lcak::LeeConvention::paper_example_halved);
  CHECK(h.omega[1] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(h.normB2 == doctest::Approx(1.0).epsilon(1e-10));
  for (const Point& p : test::points(M, 10)) {
    const auto q = lcak::extract_lee_form(M, p);
    CHECK(q.omega[1] == doctest::Approx(2.0 / p[1]).epsilon(1e-9));
    CHECK(q.normB2 == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(lcak::check_lee_closed(M, p) <= 1e-5);
  }
}

TEST_CASE("Kaehler fixtures have zero Lee form") {
  for (const char* name : {"flat-kahler", "sphere-plane-kahler"}) {
    const auto M = test::fixture(name);
    for (const Point& p : test::points(M, 5)) {
      const auto d = lcak::extract_lee_form(M, p);
      CHECK(d.omega.cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(lcak::check_lee_closed(M, p) <= 1e-8);
    }
  }
}

TEST_CASE("globally conformal fixture has omega = dx1") {
  const auto M = test::fixture("global-conformal");
  for (const Point& p : test::points(M, 5)) {
    const auto d = lcak::extract_lee_form(M, p);
    CHECK((d.omega - Vec::Unit(4, 0)).cwiseAbs().maxCoeff() <= 1e-6);
    const auto lee = lcak::LeeField::extracted(M);
    CHECK(lcak::exponent_consistency_residual(M, lee, p) <= 1e-6);
  }
}

TEST_CASE("negative controls") {
  const auto broken = test::fixture("control-broken");
  const Point p = test::points(broken, 1)[0];
  CHECK_THROWS_AS(lcak::extract_lee_form(broken, p), lcak::NotLCaK);
  try {
    lcak::extract_lee_form(broken, p);
  } catch (const lcak::NotLCaK& e) {
    CHECK(e.relative_residual() > 1e-2);
  }
  const auto nonclosed = test::fixture("control-nonclosed");
  for (const Point& q : test::points(nonclosed, 5)) {
    CHECK(lcak::check_lee_closed(nonclosed, q) == doctest::Approx(1.0).epsilon(1e-6));
  }
  // imposed x1 dx2 on flat space
  const auto flat = test::fixture("flat-kahler");
  const auto lee = lcak::LeeField::imposed(flat, [](const Point& q) { return Vec(q[0] * Vec::Unit(4, 1)); });
  CHECK(lcak::check_lee_closed(lee, Point{0.3, 0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("convention names") {
  CHECK(lcak::parse_convention("canonical") == lcak::LeeConvention::canonical);
  CHECK(lcak::parse_convention("paper-example-halved") == lcak::LeeConvention::paper_example_halved);
  CHECK(lcak::convention_factor(lcak::LeeConvention::paper_example_halved) == 0.5);
  CHECK_THROWS(lcak::parse_convention("other"));
}

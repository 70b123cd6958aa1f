#include <cmath>

#include "doctest.h"
#include "lcak/metric_geometry.hpp"
#include "support.hpp"

using lcak::Mat;
using lcak::Point;
using lcak::Vec;

namespace {

Vec e(int i, int n = 4) { return Vec::Unit(n, i); }

}  // namespace

TEST_CASE("flat fixture has vanishing connection and curvature") {
  const auto M = test::fixture("flat-kahler");
  const Point p{0.3, -0.2, 0.5, 0.1};
  CHECK(lcak::christoffel(M, p).gamma.max_abs() == 0.0);
  CHECK(lcak::riemann(M, p).up.max_abs() == 0.0);
  CHECK(lcak::scalar(M, p) == 0.0);
  CHECK(lcak::ricci(M, p).cwiseAbs().maxCoeff() == 0.0);
  CHECK(lcak::covariant_derivative(M, p, e(0), lcak::constant_field(e(2))).norm() == 0.0);
  CHECK(lcak::orthonormal_frame(M, p) == Mat::Identity(4, 4));
}

TEST_CASE("Christoffel symbols of the example fixture") {
  const auto M = test::fixture("paper-example");
  const Point p{1, 2, 0, 0};
  const auto G = lcak::christoffel(M, p);
  CHECK(G.gamma(0, 0, 1) == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(G.gamma(0, 1, 0) == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(G.gamma(2, 1, 2) == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(G.gamma(1, 1, 1) == doctest::Approx(-0.5).epsilon(1e-10));
  // Gamma^x2_y1y1 = -(1/2) g^22 d_2 g_33 = -(1/2) x2^2 6 x2^5 = -3 x2^7
  CHECK(G.gamma(1, 2, 2) == doctest::Approx(-384.0).epsilon(1e-10));
}

TEST_CASE("covariant derivatives on the example fixture") {
  const auto M = test::fixture("paper-example");
  const Point p{1, 2, 0, 0};
  const Vec d22 = lcak::covariant_derivative(M, p, e(1), lcak::constant_field(e(1)));
  CHECK((d22 - (-0.5) * e(1)).norm() <= 1e-10);
  // B = 2 x2 d_x2 has nabla_B B = 0
  const lcak::VectorField B = [](const Point& q) { return Vec(2.0 * q[1] * e(1)); };
  const Vec nBB = lcak::covariant_derivative(M, p, B(p), B);
  CHECK(nBB.norm() <= 1e-9);
}

TEST_CASE("round sphere block has sectional curvature one") {
  const auto M = test::fixture("sphere-plane-kahler");
  for (const Point& p : test::points(M, 5)) {
    const auto R = lcak::riemann(M, p);
    const Mat g = M.metric(p);
    // sphere block is (x1, y1)
    const double sec = lcak::curvature_form(R.down, e(0), e(2), e(2), e(0)) / (g(0, 0) * g(2, 2) - g(0, 2) * g(0, 2));
    CHECK(std::fabs(sec - 1.0) <= 1e-5);
    CHECK(std::fabs(lcak::scalar(M, p) - 2.0) <= 1e-5);
  }
}

TEST_CASE("curvature of the example fixture") {
  const auto M = test::fixture("paper-example");
  const Point p{1, 2, 0.3, -0.2};
  const auto R = lcak::riemann(M, p);
  // hyperbolic base block: R(d1, d2, d2, d1) = -g11 g22
  CHECK(R.down(0, 1, 1, 0) == doctest::Approx(-1.0 / 16.0).epsilon(1e-8));
  const auto R2 = lcak::riemann_operator_route(M, p);
  CHECK(lcak::max_abs_diff(R.up, R2.up) <= 1e-6);
  CHECK(lcak::scalar(M, p) == doctest::Approx(-44.0).epsilon(1e-8));
}

TEST_CASE("orthonormal frame of the example fixture") {
  const auto M = test::fixture("paper-example");
  const Mat E = lcak::orthonormal_frame(M, Point{1, 2, 0, 0});
  Mat expected = Mat::Zero(4, 4);
  expected.diagonal() << 2, 2, 0.125, 0.125;
  CHECK((E - expected).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("curvature identities and compatibility on every fixture") {
  for (const auto& entry : lcak::zoo()) {
    const auto M = entry.manifold();
    for (const Point& p : test::points(M, 4)) {
      const auto R = lcak::riemann(M, p);
      const auto s = lcak::curvature_symmetries(R);
      const double scale = std::max(1.0, R.down.max_abs());
      CHECK(s.antisym_first_pair <= 1e-5 * scale);
      CHECK(s.antisym_second_pair <= 1e-5 * scale);
      CHECK(s.pair_symmetry <= 1e-5 * scale);
      CHECK(s.first_bianchi <= 1e-5 * scale);
      CHECK(lcak::metric_compatibility_residual(M, p) <= 1e-6);
      const Mat E = lcak::orthonormal_frame(M, p);
      const Mat rho = lcak::ricci_from_frame(R.down, E);
      CHECK((rho - lcak::ricci_contraction(R.up)).cwiseAbs().maxCoeff() <= 1e-6 * scale);
      CHECK((rho - rho.transpose()).cwiseAbs().maxCoeff() <= 1e-6 * scale);
    }
  }
}

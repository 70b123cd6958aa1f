#include <cmath>
#include <cstring>

#include "doctest.h"
#include "lcak/errors.hpp"
#include "lcak/finite_difference.hpp"

using lcak::Point;
namespace fd = lcak::fd;

TEST_CASE("first partials") {
  CHECK(fd::partial([](const Point& p) { return p[0] * p[0]; }, Point{3.0}, 0) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(fd::partial([](const Point& p) { return -std::log(p[1]); }, Point{0.0, 2.0}, 1) ==
        doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(std::fabs(fd::partial([](const Point& p) { return std::sin(p[0]); }, Point{0.0}, 0) - 1.0) <= 1e-9);
}

TEST_CASE("second partials") {
  const auto xy = [](const Point& p) { return p[0] * p[1]; };
  CHECK(std::fabs(fd::second_partial(xy, Point{0.3, -0.7}, 0, 1) - 1.0) <= 1e-7);
  CHECK(std::fabs(fd::second_partial([](const Point& p) { return std::pow(p[0], 6); }, Point{1.0}, 0, 0) - 30.0) <= 1e-6);
  CHECK(std::fabs(fd::second_partial([](const Point& p) { return 1.0 / (p[0] * p[0]); }, Point{2.0}, 0, 0) - 0.375) <=
        1e-7);
}

TEST_CASE("polynomials up to degree six are differentiated to roundoff") {
  const auto poly = [](const Point& p) {
    const double x = p[0];
    return 1.0 - 2.0 * x + 0.5 * x * x * x - 0.25 * std::pow(x, 5) + 0.125 * std::pow(x, 6);
  };
  const auto dpoly = [](double x) { return -2.0 + 1.5 * x * x - 1.25 * std::pow(x, 4) + 0.75 * std::pow(x, 5); };
  for (double x : {-0.9, -0.1, 0.4, 0.8}) CHECK(std::fabs(fd::partial(poly, Point{x}, 0) - dpoly(x)) <= 1e-12 * 16);
  const auto cubic = [](const Point& p) { return p[0] * p[0] * p[0]; };
  CHECK(std::fabs(fd::partial(cubic, Point{0.5}, 0) - 0.75) <= 1e-12);
}

TEST_CASE("error falls by at least 8x when the step halves") {
  const auto f = [](const Point& p) { return std::exp(p[0]); };
  const double x = 0.7;
  double prev = 0.0;
  for (double h : {0.4, 0.2, 0.1}) {
    const double err = std::fabs(fd::partial(f, Point{x}, 0, h) - std::exp(x));
    if (prev > 0.0) CHECK(prev / err >= 8.0);
    prev = err;
  }
}

TEST_CASE("mixed second partial is symmetric bit for bit") {
  const auto f = [](const Point& p) { return std::exp(p[0] * p[1]) * std::sin(p[1] + 0.3 * p[0]); };
  const Point p{0.37, -1.21};
  const double a = fd::second_partial(f, p, 0, 1);
  const double b = fd::second_partial(f, p, 1, 0);
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}

TEST_CASE("vector-valued fields differentiate componentwise") {
  const auto F = [](const Point& p) {
    lcak::Vec v(2);
    v << p[0] * p[0], std::sin(p[0]);
    return v;
  };
  const lcak::Vec d = fd::partial(F, Point{0.5}, 0);
  CHECK(std::fabs(d[0] - 1.0) <= 1e-12);
  CHECK(std::fabs(d[1] - std::cos(0.5)) <= 1e-10);
}

TEST_CASE("stencil leaving the domain is reported") {
  const auto f = [](const Point& p) {
    if (p[0] <= 0.0) throw lcak::DomainError("ln");
    return std::log(p[0]);
  };
  CHECK_THROWS_AS(fd::partial(f, Point{1e-4}, 0), lcak::StencilOutOfDomain);
}

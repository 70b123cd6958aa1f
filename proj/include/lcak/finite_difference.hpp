#pragma once

#include <cmath>
#include <limits>
#include <type_traits>

#include "lcak/errors.hpp"
#include "lcak/tensor.hpp"

namespace lcak {

/// Central-difference derivative oracle.
///
/// Every derivative in the library goes through here: a 4th-order central
/// stencil at steps h and h/2 combined by one Richardson step (6th order).
/// Fields may return a double or any Eigen vector/matrix; the stencil is
/// applied componentwise. A DomainError raised while evaluating the stencil
/// is reported as StencilOutOfDomain.
namespace fd {

/// Base step for first derivatives along an axis at coordinate x.
inline double first_step(double x) {
  static const double base = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / 6.0);
  return base * std::max(1.0, std::fabs(x));
}

/// Step of the outer difference of a nested second derivative.
inline double second_step(double x) { return first_step(x); }

/// Largest distance from p reached by a nested second-derivative stencil.
inline double stencil_radius(double x) { return 2.0 * first_step(x) + 2.0 * second_step(x); }

template <class F>
using field_value_t = std::decay_t<decltype(std::declval<const F&>()(std::declval<const Point&>()))>;

namespace detail {

template <class F>
field_value_t<F> central4(const F& field, const Point& p, int axis, double h) {
  using T = field_value_t<F>;
  const T fp1 = field(p.shifted(axis, h));
  const T fm1 = field(p.shifted(axis, -h));
  const T fp2 = field(p.shifted(axis, 2.0 * h));
  const T fm2 = field(p.shifted(axis, -2.0 * h));
  return T((8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12.0 * h));
}

}  // namespace detail

/// d field / d x_axis at p with an explicit base step.
template <class F>
field_value_t<F> partial(const F& field, const Point& p, int axis, double h) {
  using T = field_value_t<F>;
  try {
    const T coarse = detail::central4(field, p, axis, h);
    const T fine = detail::central4(field, p, axis, 0.5 * h);
    return T((16.0 * fine - coarse) / 15.0);
  } catch (const DomainError& e) {
    throw StencilOutOfDomain(std::string("finite-difference stencil left the domain: ") + e.what());
  }
}

template <class F>
field_value_t<F> partial(const F& field, const Point& p, int axis) {
  return partial(field, p, axis, first_step(p[axis]));
}

/// Mixed second derivative, averaged over both nesting orders so that
/// second_partial(f, p, i, j) == second_partial(f, p, j, i) bit for bit.
template <class F>
field_value_t<F> second_partial(const F& field, const Point& p, int i, int j) {
  using T = field_value_t<F>;
  auto nested = [&](int outer, int inner) {
    const double h_inner = first_step(p[inner]);
    auto inner_field = [&](const Point& q) { return partial(field, q, inner, h_inner); };
    return T(partial(inner_field, p, outer, second_step(p[outer])));
  };
  if (i == j) return nested(i, i);
  const T a = nested(i, j);
  const T b = nested(j, i);
  return T(0.5 * (a + b));
}

}  // namespace fd

}  // namespace lcak

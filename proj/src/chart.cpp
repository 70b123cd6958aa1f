#include "lcak/chart.hpp"

#include <cmath>

#include "lcak/errors.hpp"
#include "lcak/finite_difference.hpp"

namespace lcak {

namespace {

std::span<const double> span_of(const Point& p) {
  return {p.coords.data(), static_cast<std::size_t>(p.coords.size())};
}

}  // namespace

bool DomainConstraint::holds(const Point& p) const {
  try {
    const double d = lhs.eval(span_of(p)) - rhs.eval(span_of(p));
    switch (kind) {
      case Kind::greater: return d > 0.0;
      case Kind::less: return d < 0.0;
      case Kind::not_equal: return d != 0.0;
    }
  } catch (const DomainError&) {
  }
  return false;
}

bool DomainConstraint::holds_with_margin(const Point& p, double radius) const {
  const int dim = p.dim();
  int total = 1;
  for (int i = 0; i < dim; ++i) total *= 3;
  int sign = 0;
  Point q = p;
  for (int code = 0; code < total; ++code) {
    int c = code;
    for (int i = 0; i < dim; ++i) {
      q.coords[i] = p.coords[i] + static_cast<double>(c % 3 - 1) * radius;
      c /= 3;
    }
    if (!holds(q)) return false;
    if (kind == Kind::not_equal) {
      // x != c must not change sign across the box either.
      const double d = lhs.eval(span_of(q)) - rhs.eval(span_of(q));
      const int s = d > 0.0 ? 1 : -1;
      if (sign == 0) sign = s;
      if (s != sign) return false;
    }
  }
  return true;
}

ChartManifold::ChartManifold(std::string name, std::vector<std::string> coord_names,
                             std::vector<DomainConstraint> domain, std::vector<Expr> metric,
                             std::vector<Expr> J, std::optional<Expr> f,
                             std::vector<SampleRange> sample_box)
    : name_(std::move(name)),
      coord_names_(std::move(coord_names)),
      domain_(std::move(domain)),
      metric_(std::move(metric)),
      J_(std::move(J)),
      f_(std::move(f)),
      sample_box_(std::move(sample_box)) {
  const int n = dim();
  if (n < 4 || n % 2 != 0 || n > 8)
    throw DefinitionError(0, "chart dimension must be even and between 4 and 8");
  const auto entries = static_cast<std::size_t>(n * n);
  if (metric_.size() != entries || J_.size() != entries)
    throw DefinitionError(0, "metric and J need dim x dim entries");
  if (sample_box_.empty()) sample_box_.assign(static_cast<std::size_t>(n), SampleRange{});
  if (sample_box_.size() != static_cast<std::size_t>(n))
    throw DefinitionError(0, "sample box needs one range per coordinate");
}

Mat ChartManifold::metric(const Point& p) const {
  const int n = dim();
  Mat g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      g(i, j) = metric_expr(i, j).eval(span_of(p));
      g(j, i) = g(i, j);
    }
  }
  return g;
}

Mat ChartManifold::complex_structure(const Point& p) const {
  const int n = dim();
  Mat J(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) J(i, j) = J_expr(i, j).eval(span_of(p));
  return J;
}

double ChartManifold::f(const Point& p) const {
  if (!f_) throw MissingConformalExponent();
  return f_->eval(span_of(p));
}

bool ChartManifold::in_domain(const Point& p) const {
  if (p.dim() != dim()) return false;
  for (const auto& c : domain_)
    if (!c.holds(p)) return false;
  return true;
}

bool ChartManifold::admissible(const Point& p) const {
  if (p.dim() != dim()) return false;
  const double r = margin_radius(p);
  for (const auto& c : domain_)
    if (!c.holds_with_margin(p, r)) return false;
  return true;
}

ChartManifold ChartManifold::conformally_rescaled() const {
  if (!f_) throw MissingConformalExponent();
  const Expr factor = exp(-*f_);
  std::vector<Expr> metric;
  metric.reserve(metric_.size());
  for (const auto& e : metric_) metric.push_back(e.is_zero_constant() ? e : factor * e);
  return ChartManifold(name_ + "/rescaled", coord_names_, domain_, std::move(metric), J_, std::nullopt,
                       sample_box_);
}

Mat metric_at(const ChartManifold& M, const Point& p) {
  Mat g = M.metric(p);
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("metric is not positive definite at the point");
  return g;
}

double margin_radius(const Point& p) {
  double r = 0.0;
  for (int i = 0; i < p.dim(); ++i) r = std::max(r, fd::stencil_radius(p[i]));
  return r;
}

}  // namespace lcak

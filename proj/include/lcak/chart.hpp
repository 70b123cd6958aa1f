#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcak/expr.hpp"
#include "lcak/tensor.hpp"

namespace lcak {

/// Open condition `lhs op rhs` on the coordinates of a chart.
struct DomainConstraint {
  enum class Kind { greater, less, not_equal };

  std::string source;
  Expr lhs;
  Expr rhs;
  Kind kind = Kind::greater;

  /// Holds at every point of the closed box of half-width `radius` around p
  /// (checked on the 3^dim grid of box corners, face centres and p itself).
  bool holds_with_margin(const Point& p, double radius) const;
  bool holds(const Point& p) const;
};

struct SampleRange {
  double lo = -1.0;
  double hi = 1.0;
};

/// A single coordinate chart carrying an almost Hermitian structure.
///
/// Metric and J are given componentwise as expressions in the coordinate
/// basis; J(i, j) is J^i_j, so J maps d_j to sum_i J^i_j d_i. The optional
/// conformal exponent f is the local function with g_t = exp(-f) g.
class ChartManifold {
 public:
  ChartManifold(std::string name, std::vector<std::string> coord_names,
                std::vector<DomainConstraint> domain, std::vector<Expr> metric, std::vector<Expr> J,
                std::optional<Expr> f = std::nullopt, std::vector<SampleRange> sample_box = {});

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(coord_names_.size()); }
  /// n, where dim = 2n.
  int half_dim() const { return dim() / 2; }
  const std::vector<std::string>& coord_names() const { return coord_names_; }
  const std::vector<DomainConstraint>& domain() const { return domain_; }
  const std::vector<SampleRange>& sample_box() const { return sample_box_; }

  const Expr& metric_expr(int i, int j) const { return metric_[static_cast<std::size_t>(i * dim() + j)]; }
  const Expr& J_expr(int i, int j) const { return J_[static_cast<std::size_t>(i * dim() + j)]; }
  const std::optional<Expr>& conformal_exponent() const { return f_; }
  bool has_conformal_exponent() const { return f_.has_value(); }

  /// Metric components without definiteness checks (used inside stencils).
  Mat metric(const Point& p) const;
  /// Components J^i_j.
  Mat complex_structure(const Point& p) const;
  /// f(p); throws MissingConformalExponent when absent.
  double f(const Point& p) const;

  bool in_domain(const Point& p) const;
  /// Domain membership with the stencil margin of every derivative used by
  /// the library (see fd::stencil_radius).
  bool admissible(const Point& p) const;

  /// The chart with metric exp(-f) g_ij built as composite expressions and
  /// the same J and domain. The result carries no conformal exponent.
  ChartManifold conformally_rescaled() const;

 private:
  std::string name_;
  std::vector<std::string> coord_names_;
  std::vector<DomainConstraint> domain_;
  std::vector<Expr> metric_;
  std::vector<Expr> J_;
  std::optional<Expr> f_;
  std::vector<SampleRange> sample_box_;
};

/// Metric at p; throws NotPositiveDefinite when the matrix is not SPD.
Mat metric_at(const ChartManifold& M, const Point& p);

/// Largest stencil radius used around p, per axis maximum.
double margin_radius(const Point& p);

}  // namespace lcak

#pragma once

#include "lcak/conformal.hpp"
#include "lcak/tensor.hpp"

namespace lcak {

inline constexpr double default_tol_gray = 1e-4;

/// Gray's identities for a lowered curvature tensor R and structure J:
///   (1) R(X,Y,Z,W) = R(X,Y,JZ,JW)
///   (2) R(X,Y,Z,W) - R(JX,JY,Z,W) = R(JX,Y,JZ,W) + R(JX,Y,Z,JW)
///   (3) R(X,Y,Z,W) = R(JX,JY,JZ,JW)
/// Residuals are maxima over coordinate 4-tuples.
struct GrayReport {
  double residual1 = 0.0;
  double residual2 = 0.0;
  double residual3 = 0.0;
  bool inL1 = false;
  bool inL2 = false;
  bool inL3 = false;
  double tolerance = default_tol_gray;

  /// inL1 => inL2 => inL3.
  bool chain_consistent() const { return (!inL1 || inL2) && (!inL2 || inL3); }
};

GrayReport gray_residuals(const Tensor& down, const Mat& J, double tol = default_tol_gray);

/// Gray identities of R^t, the curvature of exp(-f) g.
GrayReport gray_residuals(const ConformalPair& C, const Point& p, double tol = default_tol_gray);

/// |(tau* - tau) - 2(n-1) trace P| for a point in L1; throws NotInL1 otherwise.
double yabien_residual(const CurvaturePack& pack, const PTensor& P, const GrayReport& gray, int n);
double yabien_residual(const ConformalPair& C, const Point& p, double tol = default_tol_gray);

/// |tau^t - tau^t*|; holds for points in L1.
double scalar_star_equality_residual(const CurvaturePack& pack);

}  // namespace lcak

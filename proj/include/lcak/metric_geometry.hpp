#pragma once

#include <functional>
#include <vector>

#include "lcak/chart.hpp"
#include "lcak/tensor.hpp"

namespace lcak {

/// Vector field on a chart: components in the coordinate basis.
using VectorField = std::function<Vec(const Point&)>;

/// Constant-coefficient field sum_i v^i d_i.
VectorField constant_field(Vec v);

/// Levi-Civita connection coefficients, stored as gamma(k, i, j) = Gamma^k_ij.
struct ConnectionCoefficients {
  Tensor gamma;

  /// Gamma(X, Y)^k = Gamma^k_ij X^i Y^j.
  Vec contract(const Vec& X, const Vec& Y) const;
};

/// Riemann tensor with the convention
///   R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
///   R(X,Y,Z,W) = g(R(X,Y)Z, W).
/// up(l, i, j, k) = R^l_ijk, the d_l component of R(d_i, d_j) d_k;
/// down(i, j, k, l) = R(d_i, d_j, d_k, d_l).
struct CurvatureValue {
  Tensor up;
  Tensor down;
};

ConnectionCoefficients christoffel(const ChartManifold& M, const Point& p);

/// Coordinate derivatives of the connection, dgamma(m, k, i, j) = d_m Gamma^k_ij,
/// assembled from first and second metric derivatives.
Tensor christoffel_derivative(const ChartManifold& M, const Point& p);

/// (nabla_X Y)^k = X^i d_i Y^k + Gamma^k_ij X^i Y^j.
Vec covariant_derivative(const ChartManifold& M, const Point& p, const Vec& X, const VectorField& Y);

/// Jacobian J(k, i) = d_i Y^k of a vector field.
Mat field_jacobian(const VectorField& Y, const Point& p);

/// Same as covariant_derivative with a precomputed Jacobian and connection.
Vec covariant_derivative(const ConnectionCoefficients& G, const Mat& jacobian, const Vec& X, const Vec& Y);

/// Index-formula curvature from the analytic chain rule on metric derivatives.
CurvatureValue riemann(const ChartManifold& M, const Point& p);

/// Second route: applies the defining operator to coordinate fields with
/// nested covariant derivatives (coordinate brackets vanish).
CurvatureValue riemann_operator_route(const ChartManifold& M, const Point& p);

/// R(X,Y)Z for vectors at p.
Vec curvature_operator(const CurvatureValue& R, const Vec& X, const Vec& Y, const Vec& Z);

/// Lowered R(X,Y,Z,W) for vectors at p.
double curvature_form(const Tensor& down, const Vec& X, const Vec& Y, const Vec& Z, const Vec& W);

Tensor lower_curvature(const Tensor& up, const Mat& g);

/// Gram-Schmidt of the coordinate basis in ascending index order. Columns
/// are the frame vectors. Throws SingularMetric on a degenerate pivot.
Mat orthonormal_frame(const Mat& g);
Mat orthonormal_frame(const ChartManifold& M, const Point& p);

/// rho(X,Y) = sum_i R(E_i, X, Y, E_i) over a g-orthonormal frame.
Mat ricci_from_frame(const Tensor& down, const Mat& frame);
/// Second route: rho_jk = R^i_ijk.
Mat ricci_contraction(const Tensor& up);
/// tau = sum_i rho(E_i, E_i).
double trace_over_frame(const Mat& form, const Mat& frame);

Mat ricci(const ChartManifold& M, const Point& p);
double scalar(const ChartManifold& M, const Point& p);

/// Residuals of the algebraic curvature symmetries.
struct CurvatureSymmetryResiduals {
  double antisym_first_pair = 0.0;   // R_ijkl + R_jikl
  double antisym_second_pair = 0.0;  // R_ijkl + R_ijlk
  double pair_symmetry = 0.0;        // R_ijkl - R_klij
  double first_bianchi = 0.0;        // R(X,Y)Z + R(Y,Z)X + R(Z,X)Y
};

CurvatureSymmetryResiduals curvature_symmetries(const CurvatureValue& R);

/// max over X, Y, Z in the coordinate basis of
/// |X g(Y,Z) - g(nabla_X Y, Z) - g(Y, nabla_X Z)| for the coordinate fields
/// and the frame fields E_a.
double metric_compatibility_residual(const ChartManifold& M, const Point& p);

}  // namespace lcak

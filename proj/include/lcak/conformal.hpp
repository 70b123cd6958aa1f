#pragma once

#include <array>

#include "lcak/hermitian.hpp"
#include "lcak/metric_geometry.hpp"

namespace lcak {

/// Setting for the conformal change g_t = exp(-f) g of a chart whose stored
/// exponent satisfies df = omega. Holds both the original chart and the
/// rescaled one (metric entries exp(-f) g_ij as composite expressions).
class ConformalPair {
 public:
  explicit ConformalPair(const ChartManifold& M);
  ConformalPair(const ChartManifold& M, LeeField lee);

  const ChartManifold& base() const { return lee_.manifold(); }
  const ChartManifold& rescaled() const { return rescaled_; }
  const LeeField& lee() const { return lee_; }

 private:
  LeeField lee_;
  ChartManifold rescaled_;
};

/// nabla^t_X Y = nabla_X Y - (1/2){ omega(X) Y + omega(Y) X - g(X, Y) B }.
Vec transformed_connection(const LeeField& lee, const Point& p, const Vec& X, const VectorField& Y);

/// Gamma^t computed from the formula above (coordinate fields).
Tensor transformed_christoffel(const LeeField& lee, const Point& p);

/// max |Gamma^t(formula) - Gamma(exp(-f) g)|.
double connection_transform_residual(const ConformalPair& C, const Point& p);

struct PTensor {
  Mat P;                     // P(d_i, d_j)
  Mat nabla_omega;           // (nabla_i omega)_j
  Mat nabla_B;               // column i is nabla_{d_i} B
  Vec omega, B;
  double trace = 0.0;        // sum_i P(E_i, E_i) over a g-orthonormal frame
  double div_B = 0.0;        // sum_i g(nabla_{E_i} B, E_i)
  double normB2 = 0.0;
  double trace_printed = 0.0;    // div B - (1/2)(1 - n)|B|^2
  double trace_corrected = 0.0;  // div B + (1/2)(1 - n)|B|^2
  double symmetry_residual = 0.0;
};

/// P(X, Y) = (nabla_X omega) Y + (1/2) omega(X) omega(Y) - (1/4)|B|^2 g(X, Y).
PTensor p_tensor(const LeeField& lee, const Point& p);

struct LieDerivativeCheck {
  Mat lie;                  // (L_B g)(d_i, d_j) from B(g(X,Y)) - g([B,X],Y) - g(X,[B,Y])
  double residual = 0.0;    // max |L_B g - 2 nabla omega|
  double symmetrized_residual = 0.0;  // max |L_B g - (nabla omega + nabla omega^T)|
};

LieDerivativeCheck lie_derivative_metric(const LeeField& lee, const Point& p);

/// Curvatures of g and of g_t at the same point, each from its own metric.
struct CurvaturePack {
  Mat g, g_t, J;
  Mat frame, frame_t;  // g- and g_t-orthonormal (Gram-Schmidt of each metric)
  CurvatureValue R, R_t;
  Mat rho, rho_star, rho_t, rho_t_star;
  double tau = 0.0, tau_star = 0.0, tau_t = 0.0, tau_t_star = 0.0;
  double f = 0.0;
};

/// rho*(X, Y) = sum_i R(E_i, X, JY, JE_i).
Mat ricci_star_from_frame(const Tensor& down, const Mat& J, const Mat& frame);
/// Second route without a frame: rho*_ab = g^pq R(d_p, d_a, J d_b, J d_q).
Mat ricci_star_contraction(const Tensor& down, const Mat& J, const Mat& g);

Mat ricci_star(const ChartManifold& M, const Point& p);
double scalar_star(const ChartManifold& M, const Point& p);

CurvaturePack curvature_pack(const ConformalPair& C, const Point& p);

/// The six term groups on the right-hand side of the curvature transform:
/// R, then the four omega groups and the |B|^2 group, in the order written.
inline constexpr int curvature_term_groups = 6;
using TermWeights = std::array<double, curvature_term_groups>;
inline constexpr TermWeights unit_weights = {1, 1, 1, 1, 1, 1};

/// Right-hand side of the transform, rhs(l, i, j, k) for R^t(d_i, d_j) d_k,
/// with each group scaled by its weight (all ones is the actual formula).
Tensor curvature_transform_rhs(const CurvaturePack& pack, const PTensor& P,
                               const TermWeights& weights = unit_weights);

struct CurvatureTransformResiduals {
  double operator_form = 0.0;   // max |R^t - rhs|
  double lowered_form = 0.0;    // max |exp(f) R^t(X,Y,Z,W) - R - (1/2){...P...}|
  double rhs_antisymmetry = 0.0;  // max |rhs(X,Y) + rhs(Y,X)|
  double frobenius = 0.0;       // Frobenius norm of R^t - rhs
};

CurvatureTransformResiduals curvature_transform_residual(const ConformalPair& C, const Point& p);

struct RicciTransformResiduals {
  double ricci = 0.0;       // rho^t vs rho + (n-1)P + (1/2) g trace P
  double ricci_star = 0.0;  // rho^t* vs rho* + (1/2){P + P(J., J.)}
  double scalar = 0.0;      // exp(-f) tau^t vs tau + (2n-1) trace P
  double scalar_star = 0.0; // exp(-f) tau^t* vs tau* + trace P
  double scalar_printed = 0.0;       // same, closed form div B - (1/2)(1-n)|B|^2
  double scalar_star_printed = 0.0;  // same, closed form div B + (n-1)|B|^2
  double frame_rescaling = 0.0;      // |g_t(E^t_i, E^t_j) - delta_ij| for E^t = exp(f/2) E
};

RicciTransformResiduals ricci_transform_residuals(const CurvaturePack& pack, const PTensor& P, int n);
RicciTransformResiduals ricci_transform_residuals(const ConformalPair& C, const Point& p);

}  // namespace lcak

#pragma once

#include "lcak/hermitian.hpp"

namespace lcak {

inline constexpr double default_tol_degenerate = 1e-8;

/// Pointwise splitting TM = D + D^perp with D = ker omega and D^perp = span B.
struct SplitFrame {
  Vec omega;
  Vec B;
  double normB2 = 0.0;
  Vec unit_normal;  // B / |B|
  Mat Q;            // projector onto D: X - omega(X) B / |B|^2
  Mat Q_perp;       // omega(X) B / |B|^2
  Mat leaf;         // columns e_1..e_{2n-1}, g-orthonormal, spanning D

  Vec project(const Vec& X) const { return Q * X; }
  Vec project_perp(const Vec& X) const { return Q_perp * X; }
};

/// Leaf frame by Gram-Schmidt of Q d_1, ..., Q d_2n in ascending order,
/// skipping vectors that vanish after orthogonalization. Throws
/// DegenerateLeeField when |B|^2 < tol_degenerate.
SplitFrame split_frame(const LeeField& lee, const Point& p, double tol_degenerate = default_tol_degenerate);

struct BundleLikeResult {
  double residual = 0.0;        // max |g(nabla_{Q'Y} QX, Q'Z) + g(nabla_{Q'Z} QX, Q'Y)|
  double second_route = 0.0;    // max |(2/|B|^4) w(Y) w(Z) w(nabla_B QX)|
  double route_difference = 0.0;  // max |definition - (2/|B|^4) formula|
  double printed_route_difference = 0.0;  // same with the coefficient 2/|B|^2
};

/// Evaluated on all triples of g-orthonormal frame vectors (as constant fields).
BundleLikeResult bundle_like_residual(const LeeField& lee, const Point& p,
                                      double tol_degenerate = default_tol_degenerate);

/// |nabla_B B - B(ln |B|) B|_g.
double autoparallel_residual(const LeeField& lee, const Point& p, double tol_degenerate = default_tol_degenerate);

struct LeafGeometry {
  SplitFrame split;
  Mat alpha;        // g(nabla_{e_i} B, e_j): coefficient of alpha(e_i, e_j) against B
  Mat alpha_unit;   // alpha / |B|^2
  Mat shape;        // A_B on the leaf frame: -(tangential part of nabla_{e_i} B), leaf components
  double div_along_leaf = 0.0;  // sum_i g(nabla_{e_i} B, e_i)
  double mean_curvature_coefficient = 0.0;  // h with H' = h B, h = div / (2n - 1)
  double gauss_coefficient = 0.0;  // -div / ((2n - 1)|B|^2): normal part of the mean of nabla_{e_i} e_i against B
  double alpha_symmetry = 0.0;     // max |alpha - alpha^T|
  double mean_curvature_residual = 0.0;  // |H' - (1/(2n-1)) sum_i alpha(e_i, e_i) B|_g
  double weingarten_residual = 0.0;  // max_i |g(nabla_{e_i} B, B) - (1/2) e_i(omega(B))|
  double weingarten_printed_residual = 0.0;  // max_i |normal part of nabla_{e_i}B - (1/2) e_i(omega(B)) B|_g
  double gauss_residual = 0.0;  // max |g(nabla_{e_i} e_j, B) + alpha(e_i, e_j)| with leaf frame fields
};

LeafGeometry leaf_geometry(const LeeField& lee, const Point& p, double tol_degenerate = default_tol_degenerate);

struct LeafFlags {
  bool minimal = false;
  bool totally_geodesic = false;
  bool killing_on_leaf = false;
  double killing_residual = 0.0;  // max |(L_B g)(e_i, e_j)|
  double alpha_norm = 0.0;        // max |alpha(e_i, e_j)|
  /// totally_geodesic == killing_on_leaf
  bool equivalence_holds() const { return totally_geodesic == killing_on_leaf; }
};

LeafFlags minimality_and_killing(const LeeField& lee, const Point& p, double tol,
                                 double tol_degenerate = default_tol_degenerate);

}  // namespace lcak

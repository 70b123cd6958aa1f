#include "lcak/foliation.hpp"

#include <algorithm>
#include <cmath>

#include "lcak/conformal.hpp"
#include "lcak/errors.hpp"
#include "lcak/finite_difference.hpp"

namespace lcak {

namespace {

Mat leaf_frame(const Mat& g, const Mat& Q, int count) {
  const int n = static_cast<int>(g.rows());
  Mat E(n, count);
  int found = 0;
  for (int a = 0; a < n && found < count; ++a) {
    Vec v = Q.col(a);
    for (int b = 0; b < found; ++b) v -= E.col(b).dot(g * v) * E.col(b);
    const double norm2 = v.dot(g * v);
    if (!(norm2 > 1e-12 * g(a, a))) continue;
    E.col(found++) = v / std::sqrt(norm2);
  }
  if (found < count) throw DegenerateLeeField(0.0);
  return E;
}

SplitFrame split_from(const Mat& g, const Vec& omega, double tol_degenerate) {
  const int n = static_cast<int>(g.rows());
  SplitFrame s;
  s.omega = omega;
  s.B = g.ldlt().solve(omega);
  s.normB2 = std::max(0.0, omega.dot(s.B));
  if (!(s.normB2 >= tol_degenerate)) throw DegenerateLeeField(s.normB2);
  s.unit_normal = s.B / std::sqrt(s.normB2);
  s.Q_perp = s.B * omega.transpose() / s.normB2;
  s.Q = Mat::Identity(n, n) - s.Q_perp;
  s.leaf = leaf_frame(g, s.Q, n - 1);
  return s;
}

}  // namespace

SplitFrame split_frame(const LeeField& lee, const Point& p, double tol_degenerate) {
  return split_from(lee.manifold().metric(p), lee.omega(p), tol_degenerate);
}

BundleLikeResult bundle_like_residual(const LeeField& lee, const Point& p, double tol_degenerate) {
  const ChartManifold& M = lee.manifold();
  const int n = M.dim();
  const Mat g = M.metric(p);
  const SplitFrame s = split_frame(lee, p, tol_degenerate);
  const Mat frame = orthonormal_frame(g);
  const ConnectionCoefficients G = christoffel(M, p);

  // Q(q) X for each frame vector X, as a field, and its Jacobian at p.
  auto Q_at = [&lee, tol_degenerate](const Point& q) {
    return split_from(lee.manifold().metric(q), lee.omega(q), tol_degenerate).Q;
  };
  std::vector<Mat> dQ;
  for (int a = 0; a < n; ++a) dQ.push_back(fd::partial(Q_at, p, a));

  BundleLikeResult r;
  const double b4 = s.normB2 * s.normB2;
  for (int x = 0; x < n; ++x) {
    const Vec X = frame.col(x);
    const Vec QX = s.Q * X;
    Mat jac(n, n);
    for (int a = 0; a < n; ++a) jac.col(a) = dQ[static_cast<std::size_t>(a)] * X;
    const double w_nabla_B_QX = s.omega.dot(covariant_derivative(G, jac, s.B, QX));
    for (int y = 0; y < n; ++y) {
      const Vec QpY = s.Q_perp * frame.col(y);
      const Vec nY = covariant_derivative(G, jac, QpY, QX);
      for (int z = 0; z < n; ++z) {
        const Vec QpZ = s.Q_perp * frame.col(z);
        const Vec nZ = covariant_derivative(G, jac, QpZ, QX);
        const double lhs = nY.dot(g * QpZ) + nZ.dot(g * QpY);
        const double wy = s.omega.dot(frame.col(y));
        const double wz = s.omega.dot(frame.col(z));
        const double route = 2.0 / b4 * wy * wz * w_nabla_B_QX;
        const double printed = 2.0 / s.normB2 * wy * wz * w_nabla_B_QX;
        r.residual = std::max(r.residual, std::fabs(lhs));
        r.second_route = std::max(r.second_route, std::fabs(route));
        r.route_difference = std::max(r.route_difference, std::fabs(lhs - route));
        r.printed_route_difference = std::max(r.printed_route_difference, std::fabs(lhs - printed));
      }
    }
  }
  return r;
}

double autoparallel_residual(const LeeField& lee, const Point& p, double tol_degenerate) {
  const ChartManifold& M = lee.manifold();
  const Mat g = M.metric(p);
  const SplitFrame s = split_frame(lee, p, tol_degenerate);
  const Vec nabla_BB = lee.nabla_B(p) * s.B;
  // B(ln |B|) = (1/2) B(|B|^2) / |B|^2
  double dnorm = 0.0;
  auto norm2 = [&lee](const Point& q) { return lee.norm2(q); };
  for (int a = 0; a < M.dim(); ++a) dnorm += s.B[a] * fd::partial(norm2, p, a);
  const Vec diff = nabla_BB - 0.5 * dnorm / s.normB2 * s.B;
  return std::sqrt(std::max(0.0, diff.dot(g * diff)));
}

LeafGeometry leaf_geometry(const LeeField& lee, const Point& p, double tol_degenerate) {
  const ChartManifold& M = lee.manifold();
  const int n = M.dim();
  const int m = n - 1;
  const Mat g = M.metric(p);

  LeafGeometry L;
  L.split = split_frame(lee, p, tol_degenerate);
  const SplitFrame& s = L.split;
  const Mat& e = s.leaf;
  const Mat nabla_B = lee.nabla_B(p);

  L.alpha.resize(m, m);
  L.shape.resize(m, m);
  for (int i = 0; i < m; ++i) {
    const Vec nb = nabla_B * e.col(i);
    const Vec tangential = s.Q * nb;
    for (int j = 0; j < m; ++j) {
      L.alpha(i, j) = nb.dot(g * e.col(j));
      L.shape(j, i) = -tangential.dot(g * e.col(j));
    }
  }
  L.alpha_unit = L.alpha / s.normB2;
  L.alpha_symmetry = max_abs(Mat(L.alpha - L.alpha.transpose()));
  L.div_along_leaf = L.alpha.trace();
  L.mean_curvature_coefficient = L.div_along_leaf / m;
  L.gauss_coefficient = -L.div_along_leaf / (m * s.normB2);
  {
    Vec mean = Vec::Zero(n);
    for (int i = 0; i < m; ++i) mean += L.alpha(i, i) * s.B;
    const Vec diff = L.mean_curvature_coefficient * s.B - mean / m;
    L.mean_curvature_residual = std::sqrt(std::max(0.0, diff.dot(g * diff)));
  }

  // Weingarten: g(nabla_X B, B) = (1/2) X(omega(B)) on leaf vectors.
  auto wB = [&lee](const Point& q) { return lee.norm2(q); };
  Vec d_wB(n);
  for (int a = 0; a < n; ++a) d_wB[a] = fd::partial(wB, p, a);
  for (int i = 0; i < m; ++i) {
    const Vec nb = nabla_B * e.col(i);
    const double half_deriv = 0.5 * d_wB.dot(e.col(i));
    L.weingarten_residual = std::max(L.weingarten_residual, std::fabs(nb.dot(g * s.B) - half_deriv));
    const Vec normal_part = s.Q_perp * nb - half_deriv * s.B;
    L.weingarten_printed_residual =
        std::max(L.weingarten_printed_residual, std::sqrt(std::max(0.0, normal_part.dot(g * normal_part))));
  }

  // Gauss: with leaf frame fields, g(nabla_{e_i} e_j, B) = -g(e_j, nabla_{e_i} B).
  const ConnectionCoefficients G = christoffel(M, p);
  for (int j = 0; j < m; ++j) {
    VectorField ej = [&lee, j, tol_degenerate](const Point& q) -> Vec {
      return split_from(lee.manifold().metric(q), lee.omega(q), tol_degenerate).leaf.col(j);
    };
    const Mat jac = field_jacobian(ej, p);
    for (int i = 0; i < m; ++i) {
      const Vec nee = covariant_derivative(G, jac, e.col(i), e.col(j));
      L.gauss_residual = std::max(L.gauss_residual, std::fabs(nee.dot(g * s.B) + L.alpha(i, j)));
    }
  }
  return L;
}

LeafFlags minimality_and_killing(const LeeField& lee, const Point& p, double tol, double tol_degenerate) {
  const LeafGeometry L = leaf_geometry(lee, p, tol_degenerate);
  const Mat lie = lie_derivative_metric(lee, p).lie;
  const Mat& e = L.split.leaf;
  LeafFlags f;
  f.alpha_norm = max_abs(L.alpha);
  f.killing_residual = max_abs(Mat(e.transpose() * lie * e));
  f.minimal = std::fabs(L.div_along_leaf) <= tol;
  f.totally_geodesic = f.alpha_norm <= tol;
  f.killing_on_leaf = f.killing_residual <= tol;
  return f;
}

}  // namespace lcak

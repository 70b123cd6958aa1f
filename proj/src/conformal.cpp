#include "lcak/conformal.hpp"

#include <algorithm>
#include <cmath>

#include "lcak/errors.hpp"
#include "lcak/finite_difference.hpp"

namespace lcak {

namespace {

LeeField lee_for(const ChartManifold& M) {
  if (!M.has_conformal_exponent()) throw MissingConformalExponent();
  return LeeField::extracted(M);
}

}  // namespace

ConformalPair::ConformalPair(const ChartManifold& M) : ConformalPair(M, lee_for(M)) {}

ConformalPair::ConformalPair(const ChartManifold& M, LeeField lee)
    : lee_(std::move(lee)), rescaled_(M.conformally_rescaled()) {}

Vec transformed_connection(const LeeField& lee, const Point& p, const Vec& X, const VectorField& Y) {
  const ChartManifold& M = lee.manifold();
  const LeeData d = lee.data(p);
  const Vec y = Y(p);
  const Vec nabla = covariant_derivative(M, p, X, Y);
  const double gXY = X.dot(M.metric(p) * y);
  return nabla - 0.5 * (d.omega.dot(X) * y + d.omega.dot(y) * X - gXY * d.B);
}

Tensor transformed_christoffel(const LeeField& lee, const Point& p) {
  const ChartManifold& M = lee.manifold();
  const int n = M.dim();
  const Mat g = M.metric(p);
  const LeeData d = lee.data(p);
  Tensor out = christoffel(M, p).gamma;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double corr = (k == j ? d.omega[i] : 0.0) + (k == i ? d.omega[j] : 0.0) - g(i, j) * d.B[k];
        out(k, i, j) -= 0.5 * corr;
      }
  return out;
}

double connection_transform_residual(const ConformalPair& C, const Point& p) {
  return max_abs_diff(transformed_christoffel(C.lee(), p), christoffel(C.rescaled(), p).gamma);
}

PTensor p_tensor(const LeeField& lee, const Point& p) {
  const ChartManifold& M = lee.manifold();
  const Mat g = M.metric(p);
  const LeeData d = lee.data(p);
  const Mat frame = orthonormal_frame(g);
  const int n = M.half_dim();

  PTensor out;
  out.omega = d.omega;
  out.B = d.B;
  out.normB2 = d.normB2;
  out.nabla_omega = lee.nabla_omega(p);
  out.nabla_B = lee.nabla_B(p);
  out.P = out.nabla_omega + 0.5 * d.omega * d.omega.transpose() - 0.25 * d.normB2 * g;
  out.symmetry_residual = max_abs(Mat(out.P - out.P.transpose()));
  for (int i = 0; i < frame.cols(); ++i) {
    const Vec E = frame.col(i);
    out.div_B += E.dot(g * (out.nabla_B * E));
    out.trace += E.dot(out.P * E);
  }
  out.trace_printed = out.div_B - 0.5 * (1 - n) * d.normB2;
  out.trace_corrected = out.div_B + 0.5 * (1 - n) * d.normB2;
  return out;
}

LieDerivativeCheck lie_derivative_metric(const LeeField& lee, const Point& p) {
  const ChartManifold& M = lee.manifold();
  const int n = M.dim();
  const Mat g = M.metric(p);
  const Vec B = lee.B(p);
  const Mat jac = lee.B_jacobian(p);  // (k, i) = d_i B^k
  auto metric = [&M](const Point& q) { return M.metric(q); };

  // B(g(d_i, d_j)) - g([B, d_i], d_j) - g(d_i, [B, d_j]) with [B, d_i] = -d_i B
  Mat lie = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) lie += B[k] * fd::partial(metric, p, k);
  lie += jac.transpose() * g + g * jac;

  const Mat nw = lee.nabla_omega(p);
  LieDerivativeCheck out;
  out.lie = lie;
  out.residual = max_abs(Mat(lie - 2.0 * nw));
  out.symmetrized_residual = max_abs(Mat(lie - nw - nw.transpose()));
  return out;
}

Mat ricci_star_from_frame(const Tensor& down, const Mat& J, const Mat& frame) {
  const int n = down.dim();
  Mat rho = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Vec X = Vec::Unit(n, a);
      const Vec JY = J.col(b);
      double s = 0.0;
      for (int i = 0; i < frame.cols(); ++i) {
        const Vec E = frame.col(i);
        s += curvature_form(down, E, X, JY, J * E);
      }
      rho(a, b) = s;
    }
  return rho;
}

Mat ricci_star_contraction(const Tensor& down, const Mat& J, const Mat& g) {
  const int n = down.dim();
  const Mat ginv = g.inverse();
  Mat rho = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double s = 0.0;
      for (int pi = 0; pi < n; ++pi)
        for (int q = 0; q < n; ++q) {
          if (ginv(pi, q) == 0.0) continue;
          s += ginv(pi, q) * curvature_form(down, Vec::Unit(n, pi), Vec::Unit(n, a), J.col(b), J.col(q));
        }
      rho(a, b) = s;
    }
  return rho;
}

Mat ricci_star(const ChartManifold& M, const Point& p) {
  return ricci_star_from_frame(riemann(M, p).down, M.complex_structure(p), orthonormal_frame(M, p));
}

double scalar_star(const ChartManifold& M, const Point& p) {
  const Mat frame = orthonormal_frame(M, p);
  return trace_over_frame(ricci_star_from_frame(riemann(M, p).down, M.complex_structure(p), frame), frame);
}

CurvaturePack curvature_pack(const ConformalPair& C, const Point& p) {
  const ChartManifold& M = C.base();
  CurvaturePack k;
  k.g = metric_at(M, p);
  k.g_t = metric_at(C.rescaled(), p);
  k.J = M.complex_structure(p);
  k.f = M.f(p);
  k.frame = orthonormal_frame(k.g);
  k.frame_t = orthonormal_frame(k.g_t);
  k.R = riemann(M, p);
  k.R_t = riemann(C.rescaled(), p);
  k.rho = ricci_from_frame(k.R.down, k.frame);
  k.rho_t = ricci_from_frame(k.R_t.down, k.frame_t);
  k.rho_star = ricci_star_from_frame(k.R.down, k.J, k.frame);
  k.rho_t_star = ricci_star_from_frame(k.R_t.down, k.J, k.frame_t);
  k.tau = trace_over_frame(k.rho, k.frame);
  k.tau_t = trace_over_frame(k.rho_t, k.frame_t);
  k.tau_star = trace_over_frame(k.rho_star, k.frame);
  k.tau_t_star = trace_over_frame(k.rho_t_star, k.frame_t);
  return k;
}

Tensor curvature_transform_rhs(const CurvaturePack& pack, const PTensor& P,
                               const TermWeights& w) {
  const int n = pack.g.rows();
  const Mat& g = pack.g;
  const Vec& om = P.omega;
  const Vec& B = P.B;
  Tensor rhs(n, {true, false, false, false});
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const double di = (l == i) ? 1.0 : 0.0;
          const double dj = (l == j) ? 1.0 : 0.0;
          double s = w[0] * pack.R.up(l, i, j, k);
          s += w[1] * 0.5 * (P.nabla_omega(j, k) + 0.5 * om[j] * om[k]) * di;
          s -= w[2] * 0.5 * (P.nabla_omega(i, k) + 0.5 * om[i] * om[k]) * dj;
          s += w[3] * 0.5 * g(j, k) * (P.nabla_B(l, i) + 0.5 * om[i] * B[l]);
          s -= w[4] * 0.5 * g(i, k) * (P.nabla_B(l, j) + 0.5 * om[j] * B[l]);
          s -= w[5] * 0.25 * P.normB2 * (g(j, k) * di - g(i, k) * dj);
          rhs(l, i, j, k) = s;
        }
  return rhs;
}

CurvatureTransformResiduals curvature_transform_residual(const ConformalPair& C, const Point& p) {
  const CurvaturePack pack = curvature_pack(C, p);
  const PTensor P = p_tensor(C.lee(), p);
  const Tensor rhs = curvature_transform_rhs(pack, P);
  const int n = pack.g.rows();

  CurvatureTransformResiduals r;
  r.operator_form = max_abs_diff(pack.R_t.up, rhs);
  double frob = 0.0;
  for (std::size_t a = 0; a < rhs.size(); ++a) {
    const double d = pack.R_t.up.data()[a] - rhs.data()[a];
    frob += d * d;
  }
  r.frobenius = std::sqrt(frob);

  const double ef = std::exp(pack.f);
  const Mat& g = pack.g;
  const Mat& Pm = P.P;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          const double lhs = ef * pack.R_t.down(i, j, k, l);
          const double expected = pack.R.down(i, j, k, l) + 0.5 * (g(i, l) * Pm(j, k) - g(j, l) * Pm(i, k)) +
                                  0.5 * (g(j, k) * Pm(i, l) - g(i, k) * Pm(j, l));
          r.lowered_form = std::max(r.lowered_form, std::fabs(lhs - expected));
          r.rhs_antisymmetry = std::max(r.rhs_antisymmetry, std::fabs(rhs(l, i, j, k) + rhs(l, j, i, k)));
        }
      }
  return r;
}

RicciTransformResiduals ricci_transform_residuals(const CurvaturePack& k, const PTensor& P, int n) {
  RicciTransformResiduals r;
  const Mat& g = k.g;
  r.ricci = max_abs(Mat(k.rho_t - (k.rho + (n - 1) * P.P + 0.5 * P.trace * g)));
  r.ricci_star = max_abs(Mat(k.rho_t_star - (k.rho_star + 0.5 * (P.P + k.J.transpose() * P.P * k.J))));
  const double emf = std::exp(-k.f);
  r.scalar = std::fabs(emf * k.tau_t - (k.tau + (2 * n - 1) * P.trace));
  r.scalar_star = std::fabs(emf * k.tau_t_star - (k.tau_star + P.trace));
  r.scalar_printed = std::fabs(emf * k.tau_t - (k.tau + (2 * n - 1) * P.trace_printed));
  r.scalar_star_printed = std::fabs(emf * k.tau_t_star - (k.tau_star + P.div_B + (n - 1) * P.normB2));
  const Mat Et = std::exp(0.5 * k.f) * k.frame;
  r.frame_rescaling = max_abs(Mat(Et.transpose() * k.g_t * Et - Mat::Identity(g.rows(), g.rows())));
  return r;
}

RicciTransformResiduals ricci_transform_residuals(const ConformalPair& C, const Point& p) {
  return ricci_transform_residuals(curvature_pack(C, p), p_tensor(C.lee(), p), C.base().half_dim());
}

}  // namespace lcak

#include "lcak/metric_geometry.hpp"

#include <algorithm>
#include <cmath>

#include "lcak/errors.hpp"
#include "lcak/finite_difference.hpp"

namespace lcak {

namespace {

Mat inverse_metric(const Mat& g) {
  Eigen::FullPivLU<Mat> lu(g);
  if (!lu.isInvertible()) throw SingularMetric("metric is singular at the point");
  return lu.inverse();
}

// dg[m] = d_m g.
std::vector<Mat> metric_gradient(const ChartManifold& M, const Point& p) {
  auto field = [&M](const Point& q) { return M.metric(q); };
  std::vector<Mat> dg;
  dg.reserve(static_cast<std::size_t>(M.dim()));
  for (int m = 0; m < M.dim(); ++m) dg.push_back(fd::partial(field, p, m));
  return dg;
}

Tensor connection_from(const Mat& ginv, const std::vector<Mat>& dg) {
  const int n = static_cast<int>(ginv.rows());
  Tensor gamma(n, {true, false, false});
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += ginv(k, l) * (dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) -
                             dg[static_cast<std::size_t>(l)](i, j));
        gamma(k, i, j) = 0.5 * s;
        gamma(k, j, i) = 0.5 * s;
      }
    }
  }
  return gamma;
}

Tensor curvature_from(const Tensor& gamma, const Tensor& dgamma) {
  const int n = gamma.dim();
  Tensor up(n, {true, false, false, false});
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = dgamma(i, l, j, k) - dgamma(j, l, i, k);
          for (int m = 0; m < n; ++m) s += gamma(l, i, m) * gamma(m, j, k) - gamma(l, j, m) * gamma(m, i, k);
          up(l, i, j, k) = s;
        }
  return up;
}

}  // namespace

VectorField constant_field(Vec v) {
  return [v = std::move(v)](const Point&) { return v; };
}

Vec ConnectionCoefficients::contract(const Vec& X, const Vec& Y) const {
  const int n = gamma.dim();
  Vec out = Vec::Zero(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[k] += gamma(k, i, j) * X[i] * Y[j];
  return out;
}

ConnectionCoefficients christoffel(const ChartManifold& M, const Point& p) {
  const Mat g = M.metric(p);
  return {connection_from(inverse_metric(g), metric_gradient(M, p))};
}

Tensor christoffel_derivative(const ChartManifold& M, const Point& p) {
  const int n = M.dim();
  const Mat g = M.metric(p);
  const Mat ginv = inverse_metric(g);
  const std::vector<Mat> dg = metric_gradient(M, p);

  auto field = [&M](const Point& q) { return M.metric(q); };
  std::vector<Mat> hess(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      hess[static_cast<std::size_t>(a * n + b)] = fd::second_partial(field, p, a, b);
      hess[static_cast<std::size_t>(b * n + a)] = hess[static_cast<std::size_t>(a * n + b)];
    }
  auto H = [&](int a, int b) -> const Mat& { return hess[static_cast<std::size_t>(a * n + b)]; };

  // first-kind symbols Gamma_{l,ij} and their derivatives
  Tensor first(n, {false, false, false});
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        first(l, i, j) = 0.5 * (dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) -
                                dg[static_cast<std::size_t>(l)](i, j));

  Tensor dgamma(n, {false, true, false, false});
  for (int m = 0; m < n; ++m) {
    const Mat dginv = -ginv * dg[static_cast<std::size_t>(m)] * ginv;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) {
            const double dfirst = 0.5 * (H(m, i)(j, l) + H(m, j)(i, l) - H(m, l)(i, j));
            s += dginv(k, l) * first(l, i, j) + ginv(k, l) * dfirst;
          }
          dgamma(m, k, i, j) = s;
        }
  }
  return dgamma;
}

Mat field_jacobian(const VectorField& Y, const Point& p) {
  const int n = p.dim();
  Mat J(n, n);
  for (int i = 0; i < n; ++i) J.col(i) = fd::partial(Y, p, i);
  return J;
}

Vec covariant_derivative(const ConnectionCoefficients& G, const Mat& jacobian, const Vec& X, const Vec& Y) {
  return jacobian * X + G.contract(X, Y);
}

Vec covariant_derivative(const ChartManifold& M, const Point& p, const Vec& X, const VectorField& Y) {
  return covariant_derivative(christoffel(M, p), field_jacobian(Y, p), X, Y(p));
}

Tensor lower_curvature(const Tensor& up, const Mat& g) {
  const int n = up.dim();
  Tensor down(n, {false, false, false, false});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) s += g(l, m) * up(m, i, j, k);
          down(i, j, k, l) = s;
        }
  return down;
}

CurvatureValue riemann(const ChartManifold& M, const Point& p) {
  const Tensor gamma = christoffel(M, p).gamma;
  const Tensor up = curvature_from(gamma, christoffel_derivative(M, p));
  return {up, lower_curvature(up, M.metric(p))};
}

CurvatureValue riemann_operator_route(const ChartManifold& M, const Point& p) {
  const int n = M.dim();
  const ConnectionCoefficients G = christoffel(M, p);
  Tensor up(n, {true, false, false, false});
  // nabla_{d_j} d_k as a vector field, for every (j, k)
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      VectorField nabla_jk = [&M, j, k](const Point& q) {
        const Tensor gq = christoffel(M, q).gamma;
        Vec v(gq.dim());
        for (int l = 0; l < gq.dim(); ++l) v[l] = gq(l, j, k);
        return v;
      };
      const Mat jac = field_jacobian(nabla_jk, p);
      const Vec at_p = nabla_jk(p);
      for (int i = 0; i < n; ++i) {
        const Vec e_i = Vec::Unit(n, i);
        const Vec term = covariant_derivative(G, jac, e_i, at_p);  // nabla_i nabla_j d_k
        for (int l = 0; l < n; ++l) {
          up(l, i, j, k) += term[l];
          up(l, j, i, k) -= term[l];
        }
      }
    }
  }
  return {up, lower_curvature(up, M.metric(p))};
}

Vec curvature_operator(const CurvatureValue& R, const Vec& X, const Vec& Y, const Vec& Z) {
  const int n = R.up.dim();
  Vec out = Vec::Zero(n);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) out[l] += R.up(l, i, j, k) * X[i] * Y[j] * Z[k];
  return out;
}

double curvature_form(const Tensor& down, const Vec& X, const Vec& Y, const Vec& Z, const Vec& W) {
  const int n = down.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    if (X[i] == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (Y[j] == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        if (Z[k] == 0.0) continue;
        for (int l = 0; l < n; ++l) s += down(i, j, k, l) * X[i] * Y[j] * Z[k] * W[l];
      }
    }
  }
  return s;
}

Mat orthonormal_frame(const Mat& g) {
  const int n = static_cast<int>(g.rows());
  Mat E(n, n);
  for (int a = 0; a < n; ++a) {
    Vec v = Vec::Unit(n, a);
    for (int b = 0; b < a; ++b) v -= E.col(b).dot(g * v) * E.col(b);
    const double norm2 = v.dot(g * v);
    if (!(norm2 > 1e-24)) throw SingularMetric("degenerate Gram-Schmidt pivot");
    E.col(a) = v / std::sqrt(norm2);
  }
  return E;
}

Mat orthonormal_frame(const ChartManifold& M, const Point& p) { return orthonormal_frame(metric_at(M, p)); }

Mat ricci_from_frame(const Tensor& down, const Mat& frame) {
  const int n = down.dim();
  Mat rho = Mat::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        const Vec E = frame.col(i);
        s += curvature_form(down, E, Vec::Unit(n, a), Vec::Unit(n, b), E);
      }
      rho(a, b) = s;
    }
  return rho;
}

Mat ricci_contraction(const Tensor& up) {
  const int n = up.dim();
  Mat rho = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) rho(j, k) += up(i, i, j, k);
  return rho;
}

double trace_over_frame(const Mat& form, const Mat& frame) {
  double s = 0.0;
  for (int i = 0; i < frame.cols(); ++i) s += frame.col(i).dot(form * frame.col(i));
  return s;
}

Mat ricci(const ChartManifold& M, const Point& p) {
  return ricci_from_frame(riemann(M, p).down, orthonormal_frame(M, p));
}

double scalar(const ChartManifold& M, const Point& p) {
  const Mat frame = orthonormal_frame(M, p);
  return trace_over_frame(ricci_from_frame(riemann(M, p).down, frame), frame);
}

CurvatureSymmetryResiduals curvature_symmetries(const CurvatureValue& R) {
  const int n = R.down.dim();
  CurvatureSymmetryResiduals r;
  const Tensor& d = R.down;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          r.antisym_first_pair = std::max(r.antisym_first_pair, std::fabs(d(i, j, k, l) + d(j, i, k, l)));
          r.antisym_second_pair = std::max(r.antisym_second_pair, std::fabs(d(i, j, k, l) + d(i, j, l, k)));
          r.pair_symmetry = std::max(r.pair_symmetry, std::fabs(d(i, j, k, l) - d(k, l, i, j)));
          r.first_bianchi = std::max(
              r.first_bianchi, std::fabs(R.up(l, i, j, k) + R.up(l, j, k, i) + R.up(l, k, i, j)));
        }
  return r;
}

double metric_compatibility_residual(const ChartManifold& M, const Point& p) {
  const int n = M.dim();
  const ConnectionCoefficients G = christoffel(M, p);
  std::vector<VectorField> fields;
  for (int a = 0; a < n; ++a) {
    fields.push_back(constant_field(Vec::Unit(n, a)));
    fields.push_back([&M, a](const Point& q) { return Vec(orthonormal_frame(M.metric(q)).col(a)); });
  }
  std::vector<Mat> jac;
  std::vector<Vec> val;
  for (const auto& F : fields) {
    jac.push_back(field_jacobian(F, p));
    val.push_back(F(p));
  }
  const Mat g = M.metric(p);
  double worst = 0.0;
  for (std::size_t y = 0; y < fields.size(); ++y) {
    for (std::size_t z = y; z < fields.size(); ++z) {
      auto inner = [&](const Point& q) { return fields[y](q).dot(M.metric(q) * fields[z](q)); };
      for (int i = 0; i < n; ++i) {
        const Vec X = Vec::Unit(n, i);
        const double lhs = fd::partial(inner, p, i);
        const double rhs = covariant_derivative(G, jac[y], X, val[y]).dot(g * val[z]) +
                           val[y].dot(g * covariant_derivative(G, jac[z], X, val[z]));
        worst = std::max(worst, std::fabs(lhs - rhs));
      }
    }
  }
  return worst;
}

}  // namespace lcak

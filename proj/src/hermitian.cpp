#include "lcak/hermitian.hpp"

#include <algorithm>
#include <cmath>

#include "lcak/errors.hpp"
#include "lcak/finite_difference.hpp"

namespace lcak {

AlmostHermitianResiduals check_almost_hermitian(const ChartManifold& M, const Point& p) {
  const Mat g = M.metric(p);
  const Mat J = M.complex_structure(p);
  const int n = M.dim();
  AlmostHermitianResiduals r;
  r.j_squared = max_abs(Mat(J * J + Mat::Identity(n, n)));
  r.compatibility = max_abs(Mat(J.transpose() * g * J - g));
  return r;
}

FormValue fundamental_form(const ChartManifold& M, const Point& p) {
  const Mat g = M.metric(p);
  const Mat A = g * M.complex_structure(p);
  const Mat Omega = 0.5 * (A - A.transpose());
  if (!(std::fabs(Omega.determinant()) > 1e-8 * std::fabs(g.determinant())))
    throw DegenerateForm("fundamental form is degenerate");
  return two_form(Omega);
}

FormValue fundamental_form_derivative(const ChartManifold& M, const Point& p) {
  return exterior_derivative([&M](const Point& q) { return fundamental_form(M, q); }, p);
}

double convention_factor(LeeConvention c) { return c == LeeConvention::canonical ? 1.0 : 0.5; }

std::string_view convention_name(LeeConvention c) {
  return c == LeeConvention::canonical ? "canonical" : "paper-example-halved";
}

LeeConvention parse_convention(std::string_view name) {
  if (name == "canonical") return LeeConvention::canonical;
  if (name == "paper-example-halved") return LeeConvention::paper_example_halved;
  throw Error("unknown Lee convention: " + std::string(name));
}

LeeData solve_lee_form(const FormValue& Omega, const FormValue& dOmega, const Mat& g) {
  const int n = Omega.dim();
  const auto rows = static_cast<Eigen::Index>(dOmega.size());
  Mat A(rows, n);
  for (int a = 0; a < n; ++a) A.col(a) = wedge(one_form(Vec::Unit(n, a)), Omega).values();
  const Vec& b = dOmega.values();

  LeeData d;
  d.omega = A.colPivHouseholderQr().solve(b);
  d.residual = max_abs(Vec(b - A * d.omega));
  const double scale = std::max(dOmega.max_abs(), Omega.max_abs());
  d.relative_residual = scale > 0.0 ? d.residual / scale : 0.0;
  d.B = g.ldlt().solve(d.omega);
  d.normB2 = std::max(0.0, d.omega.dot(d.B));
  return d;
}

LeeData extract_lee_form(const ChartManifold& M, const Point& p, double tolerance) {
  LeeData d = solve_lee_form(fundamental_form(M, p), fundamental_form_derivative(M, p), M.metric(p));
  if (d.relative_residual > tolerance) throw NotLCaK(d.relative_residual);
  return d;
}

LeeData in_convention(const LeeData& d, LeeConvention c) {
  const double s = convention_factor(c);
  LeeData out = d;
  out.omega *= s;
  out.B *= s;
  out.normB2 *= s * s;
  return out;
}

LeeField LeeField::extracted(const ChartManifold& M, double tolerance) {
  auto shared = std::make_shared<const ChartManifold>(M);
  const ChartManifold* raw = shared.get();
  return LeeField(shared, [raw, tolerance](const Point& q) { return extract_lee_form(*raw, q, tolerance).omega; });
}

LeeField LeeField::imposed(const ChartManifold& M, OneFormField omega) {
  return LeeField(std::make_shared<const ChartManifold>(M), std::move(omega));
}

Vec LeeField::B(const Point& p) const { return M_->metric(p).ldlt().solve(omega_(p)); }

double LeeField::norm2(const Point& p) const {
  const Vec w = omega_(p);
  return std::max(0.0, w.dot(M_->metric(p).ldlt().solve(w)));
}

LeeData LeeField::data(const Point& p) const {
  LeeData d;
  d.omega = omega_(p);
  d.B = M_->metric(p).ldlt().solve(d.omega);
  d.normB2 = std::max(0.0, d.omega.dot(d.B));
  return d;
}

VectorField LeeField::B_field() const {
  auto M = M_;
  auto w = omega_;
  return [M, w](const Point& q) -> Vec { return M->metric(q).ldlt().solve(w(q)); };
}

Mat LeeField::B_jacobian(const Point& p) const { return field_jacobian(B_field(), p); }

Mat LeeField::nabla_B(const Point& p) const {
  const int n = M_->dim();
  const ConnectionCoefficients G = christoffel(*M_, p);
  const Mat jac = B_jacobian(p);
  const Vec b = B(p);
  Mat out(n, n);
  for (int i = 0; i < n; ++i) out.col(i) = covariant_derivative(G, jac, Vec::Unit(n, i), b);
  return out;
}

Mat LeeField::nabla_omega(const Point& p) const {
  const int n = M_->dim();
  const ConnectionCoefficients G = christoffel(*M_, p);
  const Vec w = omega_(p);
  Mat out(n, n);
  for (int i = 0; i < n; ++i) {
    const Vec dw = fd::partial(omega_, p, i);
    for (int j = 0; j < n; ++j) {
      double s = dw[j];
      for (int k = 0; k < n; ++k) s -= G.gamma(k, i, j) * w[k];
      out(i, j) = s;
    }
  }
  return out;
}

double check_lee_closed(const LeeField& lee, const Point& p) {
  auto w = lee.omega_field();
  return exterior_derivative([&w](const Point& q) { return one_form(w(q)); }, p).max_abs();
}

double check_lee_closed(const ChartManifold& M, const Point& p) {
  return check_lee_closed(LeeField::extracted(M), p);
}

double exponent_consistency_residual(const ChartManifold& M, const LeeField& lee, const Point& p) {
  if (!M.has_conformal_exponent()) throw MissingConformalExponent();
  const Vec w = lee.omega(p);
  double worst = 0.0;
  auto f = [&M](const Point& q) { return M.f(q); };
  for (int i = 0; i < M.dim(); ++i) worst = std::max(worst, std::fabs(fd::partial(f, p, i) - w[i]));
  return worst;
}

}  // namespace lcak

#pragma once

#include <functional>
#include <memory>
#include <string_view>

#include "lcak/chart.hpp"
#include "lcak/forms.hpp"
#include "lcak/metric_geometry.hpp"

namespace lcak {

/// Max-norm residuals of J^2 + I and of g_ij - J^k_i J^l_j g_kl.
struct AlmostHermitianResiduals {
  double j_squared = 0.0;
  double compatibility = 0.0;
};

AlmostHermitianResiduals check_almost_hermitian(const ChartManifold& M, const Point& p);

/// Omega(X, Y) = g(X, JY), i.e. Omega_ij = g_ik J^k_j (antisymmetrized).
/// Throws DegenerateForm when |det Omega| <= 1e-8 |det g|.
FormValue fundamental_form(const ChartManifold& M, const Point& p);

/// d Omega at p.
FormValue fundamental_form_derivative(const ChartManifold& M, const Point& p);

/// Scale of the Lee form. `canonical` solves dOmega = omega ^ Omega;
/// `paper_example_halved` reports (omega/2, B/2), matching the convention
/// dOmega = 2 omega ^ Omega.
enum class LeeConvention { canonical, paper_example_halved };

double convention_factor(LeeConvention c);
std::string_view convention_name(LeeConvention c);
LeeConvention parse_convention(std::string_view name);

struct LeeData {
  Vec omega;                 // components omega_i
  Vec B;                     // g^{-1} omega
  double normB2 = 0.0;       // g(B, B)
  double residual = 0.0;     // ||dOmega - omega ^ Omega||_inf
  double relative_residual = 0.0;
};

/// Least-squares solve of omega ^ Omega = dOmega for the given forms.
LeeData solve_lee_form(const FormValue& Omega, const FormValue& dOmega, const Mat& g);

/// Default relative tolerance of the Lee extraction.
inline constexpr double lee_tolerance = 1e-6;

/// Canonical Lee data at p; throws NotLCaK when the relative residual
/// max|dOmega - omega ^ Omega| / max(|dOmega|, |Omega|) exceeds `tolerance`.
LeeData extract_lee_form(const ChartManifold& M, const Point& p, double tolerance = lee_tolerance);

/// LeeData rescaled to the requested convention.
LeeData in_convention(const LeeData& d, LeeConvention c);

/// The Lee form as a field on the chart, either extracted pointwise from
/// dOmega or imposed by a closed-form 1-form. Derived quantities (B, its
/// covariant derivative, nabla omega) are computed with the metric of M.
class LeeField {
 public:
  using OneFormField = std::function<Vec(const Point&)>;

  static LeeField extracted(const ChartManifold& M, double tolerance = lee_tolerance);
  static LeeField imposed(const ChartManifold& M, OneFormField omega);

  const ChartManifold& manifold() const { return *M_; }

  Vec omega(const Point& p) const { return omega_(p); }
  Vec B(const Point& p) const;
  double norm2(const Point& p) const;
  LeeData data(const Point& p) const;

  /// Column i is nabla_{d_i} B.
  Mat nabla_B(const Point& p) const;
  /// nabla_omega(i, j) = (nabla_{d_i} omega)(d_j) = d_i omega_j - Gamma^k_ij omega_k.
  Mat nabla_omega(const Point& p) const;
  /// Jacobian d_i B^k as (k, i).
  Mat B_jacobian(const Point& p) const;

  VectorField B_field() const;
  OneFormField omega_field() const { return omega_; }

 private:
  LeeField(std::shared_ptr<const ChartManifold> M, OneFormField omega) : M_(std::move(M)), omega_(std::move(omega)) {}

  std::shared_ptr<const ChartManifold> M_;
  OneFormField omega_;
};

/// ||d omega||_inf for the extracted Lee form.
double check_lee_closed(const ChartManifold& M, const Point& p);
double check_lee_closed(const LeeField& lee, const Point& p);

/// max_i |d_i f - omega_i|: consistency of the stored exponent with omega.
double exponent_consistency_residual(const ChartManifold& M, const LeeField& lee, const Point& p);

}  // namespace lcak

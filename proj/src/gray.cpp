#include "lcak/gray.hpp"

#include <algorithm>
#include <cmath>

#include "lcak/errors.hpp"

namespace lcak {

namespace {

// Applies J to the slots flagged in `mask`: out(a,b,c,d) = R(J^s a, ...).
Tensor apply_J(const Tensor& R, const Mat& J, const std::array<bool, 4>& mask) {
  const int n = R.dim();
  Tensor cur = R;
  for (int slot = 0; slot < 4; ++slot) {
    if (!mask[static_cast<std::size_t>(slot)]) continue;
    Tensor next(n, R.variance());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            std::array<int, 4> idx = {a, b, c, d};
            const int fixed = idx[static_cast<std::size_t>(slot)];
            double s = 0.0;
            for (int m = 0; m < n; ++m) {
              const double j = J(m, fixed);
              if (j == 0.0) continue;
              idx[static_cast<std::size_t>(slot)] = m;
              s += j * cur(idx[0], idx[1], idx[2], idx[3]);
            }
            next(a, b, c, d) = s;
          }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

GrayReport gray_residuals(const Tensor& down, const Mat& J, double tol) {
  const Tensor r1 = apply_J(down, J, {false, false, true, true});
  const Tensor jxjy = apply_J(down, J, {true, true, false, false});
  const Tensor jxjz = apply_J(down, J, {true, false, true, false});
  const Tensor jxjw = apply_J(down, J, {true, false, false, true});
  const Tensor r3 = apply_J(down, J, {true, true, true, true});

  GrayReport g;
  g.tolerance = tol;
  for (std::size_t a = 0; a < down.size(); ++a) {
    const double R = down.data()[a];
    g.residual1 = std::max(g.residual1, std::fabs(R - r1.data()[a]));
    g.residual2 =
        std::max(g.residual2, std::fabs(R - jxjy.data()[a] - jxjz.data()[a] - jxjw.data()[a]));
    g.residual3 = std::max(g.residual3, std::fabs(R - r3.data()[a]));
  }
  g.inL1 = g.residual1 <= tol;
  g.inL2 = g.residual2 <= tol;
  g.inL3 = g.residual3 <= tol;
  return g;
}

GrayReport gray_residuals(const ConformalPair& C, const Point& p, double tol) {
  return gray_residuals(riemann(C.rescaled(), p).down, C.base().complex_structure(p), tol);
}

double yabien_residual(const CurvaturePack& pack, const PTensor& P, const GrayReport& gray, int n) {
  if (!gray.inL1) throw NotInL1(gray.residual1);
  return std::fabs((pack.tau_star - pack.tau) - 2.0 * (n - 1) * P.trace);
}

double yabien_residual(const ConformalPair& C, const Point& p, double tol) {
  const CurvaturePack pack = curvature_pack(C, p);
  const GrayReport gray = gray_residuals(pack.R_t.down, pack.J, tol);
  return yabien_residual(pack, p_tensor(C.lee(), p), gray, C.base().half_dim());
}

double scalar_star_equality_residual(const CurvaturePack& pack) { return std::fabs(pack.tau_t - pack.tau_t_star); }

}  // namespace lcak

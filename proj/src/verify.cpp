#include "lcak/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

#include "lcak/conformal.hpp"
#include "lcak/errors.hpp"
#include "lcak/foliation.hpp"
#include "lcak/gray.hpp"
#include "lcak/metric_geometry.hpp"
#include "lcak/zoo.hpp"

namespace lcak {

namespace {

using TolField = double Tolerances::*;

struct CheckDef {
  const char* name;
  CheckKind kind;
  bool asserted;
  TolField tol;  // nullptr for flags and values
  const char* description;
};

constexpr CheckKind R = CheckKind::residual;
constexpr CheckKind F = CheckKind::flag;
constexpr CheckKind V = CheckKind::value;

const std::vector<CheckDef>& definitions(Suite s) {
  static const std::vector<CheckDef> hermitian = {
      {"j_squared", R, true, &Tolerances::hermitian, "max |J^2 + I| / max(1, |J|^2)"},
      {"compatibility", R, true, &Tolerances::hermitian, "max |J^T g J - g| / max(1, |g| |J|^2)"},
      {"omega_j_invariance", R, true, &Tolerances::form, "max |Omega(JX, JY) - Omega(X, Y)|, relative"},
      {"omega_nondegenerate", R, true, &Tolerances::form, "|det Omega / det g - 1|"},
      {"almost_hermitian", F, false, nullptr, "J^2 = -I and g(JX, JY) = g(X, Y) within tolerance"},
  };
  static const std::vector<CheckDef> lcak = {
      {"lee_extraction", R, true, &Tolerances::lee, "max |dOmega - omega ^ Omega| / max(|dOmega|, |Omega|)"},
      {"lee_closed", R, true, &Tolerances::nested, "max |d omega|"},
      {"lee_duality", R, true, &Tolerances::form, "max |g(B, .) - omega|"},
      {"exponent_consistency", R, true, &Tolerances::first_derivative, "max |df - omega| (canonical omega)"},
      {"lee_norm2", V, false, nullptr, "|B|^2 in the selected convention"},
      {"is_lcak", F, false, nullptr, "Lee extraction and closedness within tolerance"},
      {"almost_kahler", F, false, nullptr, "LCaK with |B|^2 below the degeneracy tolerance"},
  };
  static const std::vector<CheckDef> conformal = {
      {"connection_transform", R, true, &Tolerances::first_derivative,
       "max |Gamma^t(formula) - Gamma(exp(-f) g)|"},
      {"p_symmetry", R, true, &Tolerances::first_derivative, "max |P - P^T|"},
      {"trace_p_two_route", R, true, &Tolerances::first_derivative,
       "|sum_i P(E_i, E_i) - (div B + (1/2)(1 - n)|B|^2)|"},
      {"trace_p_printed", R, false, &Tolerances::first_derivative,
       "|sum_i P(E_i, E_i) - (div B - (1/2)(1 - n)|B|^2)| (printed closed form)"},
      {"lie_derivative", R, true, &Tolerances::nested, "max |L_B g - 2 nabla omega|"},
      {"curvature_transform", R, true, &Tolerances::curvature, "max |R^t(X,Y)Z - rhs| over coordinate triples"},
      {"curvature_transform_lowered", R, true, &Tolerances::curvature,
       "max |exp(f) R^t(X,Y,Z,W) - R(X,Y,Z,W) - (1/2){P terms}|"},
      {"curvature_rhs_antisymmetry", R, true, &Tolerances::first_derivative, "max |rhs(X,Y) + rhs(Y,X)|"},
      {"ricci_transform", R, true, &Tolerances::curvature, "max |rho^t - rho - (n-1) P - (1/2) g trace P|"},
      {"ricci_star_transform", R, true, &Tolerances::curvature,
       "max |rho^t* - rho* - (1/2){P + P(J., J.)}|"},
      {"scalar_transform", R, true, &Tolerances::curvature, "|exp(-f) tau^t - tau - (2n-1) trace P|"},
      {"scalar_star_transform", R, true, &Tolerances::curvature, "|exp(-f) tau^t* - tau* - trace P|"},
      {"scalar_transform_printed", R, false, &Tolerances::curvature,
       "|exp(-f) tau^t - tau - (2n-1){div B - (1/2)(1-n)|B|^2}| (printed closed form)"},
      {"scalar_star_transform_printed", R, false, &Tolerances::curvature,
       "|exp(-f) tau^t* - tau* - div B - (n-1)|B|^2| (printed closed form)"},
      {"frame_rescaling", R, true, &Tolerances::frame, "max |g_t(E^t_i, E^t_j) - delta_ij|, E^t = exp(f/2) E"},
      {"tau", V, false, nullptr, "scalar curvature of g"},
      {"tau_star", V, false, nullptr, "scalar *-curvature of g"},
      {"tau_t", V, false, nullptr, "scalar curvature of g_t"},
      {"tau_t_star", V, false, nullptr, "scalar *-curvature of g_t"},
      {"trace_p", V, false, nullptr, "sum_i P(E_i, E_i)"},
      {"div_b", V, false, nullptr, "sum_i g(nabla_{E_i} B, E_i)"},
  };
  static const std::vector<CheckDef> gray = {
      {"identity_1", V, false, nullptr, "max |R(X,Y,Z,W) - R(X,Y,JZ,JW)|"},
      {"identity_2", V, false, nullptr, "max |R - R(JX,JY,Z,W) - R(JX,Y,JZ,W) - R(JX,Y,Z,JW)|"},
      {"identity_3", V, false, nullptr, "max |R(X,Y,Z,W) - R(JX,JY,JZ,JW)|"},
      {"in_l1", F, false, nullptr, "identity (1) within tol_gray"},
      {"in_l2", F, false, nullptr, "identity (2) within tol_gray"},
      {"in_l3", F, false, nullptr, "identity (3) within tol_gray"},
      {"class_chain", F, true, nullptr, "in_l1 => in_l2 => in_l3"},
      {"star_scalar_difference", R, true, &Tolerances::curvature,
       "|(tau* - tau) - 2(n-1) trace P| where identity (1) holds"},
      {"tau_t_equals_tau_t_star", R, true, &Tolerances::curvature, "|tau^t - tau^t*| where identity (1) holds"},
  };
  static const std::vector<CheckDef> foliation = {
      {"projections", R, true, &Tolerances::projection, "projector algebra of Q and Q-perp"},
      {"leaf_frame_orthonormal", R, true, &Tolerances::form, "max |g(e_i, e_j) - delta_ij|"},
      {"leaf_frame_in_kernel", R, true, &Tolerances::form, "max |omega(e_i)|"},
      {"bundle_like", V, false, nullptr, "max |g(nabla_{Q'Y} QX, Q'Z) + g(nabla_{Q'Z} QX, Q'Y)|"},
      {"autoparallel", V, false, nullptr, "|nabla_B B - B(ln |B|) B|_g"},
      {"bundle_like_two_route", R, true, &Tolerances::first_derivative,
       "max |bundle-like form - (2/|B|^4) w(Y) w(Z) w(nabla_B QX)|"},
      {"bundle_like_printed_route", R, false, &Tolerances::first_derivative,
       "same with the printed coefficient 2/|B|^2"},
      {"riemannian_iff_autoparallel", F, true, nullptr,
       "(bundle_like <= tol) == (autoparallel <= tol), tol = nested"},
      {"alpha_symmetry", R, true, &Tolerances::first_derivative, "max |alpha(e_i,e_j) - alpha(e_j,e_i)|"},
      {"mean_curvature", R, true, &Tolerances::first_derivative,
       "|H' - (1/(2n-1)) sum_i alpha(e_i, e_i) B|_g"},
      {"weingarten", R, true, &Tolerances::nested, "max |g(nabla_{e_i} B, B) - (1/2) e_i(omega(B))|"},
      {"weingarten_printed", R, false, &Tolerances::nested,
       "max |normal part of nabla_{e_i} B - (1/2) e_i(omega(B)) B|_g (printed form)"},
      {"gauss_frame_fields", R, true, &Tolerances::nested, "max |g(nabla_{e_i} e_j, B) + alpha(e_i, e_j)|"},
      {"div_along_leaf", V, false, nullptr, "sum_i g(nabla_{e_i} B, e_i)"},
      {"mean_curvature_coefficient", V, false, nullptr, "h with H' = h B"},
      {"gauss_coefficient", V, false, nullptr, "-div / ((2n-1)|B|^2)"},
      {"lee_autoparallel", F, false, nullptr, "autoparallel <= tol (nested)"},
      {"leaves_minimal", F, false, nullptr, "|div_along_leaf| <= tol (first derivative)"},
      {"totally_geodesic", F, false, nullptr, "max |alpha| <= tol (first derivative)"},
      {"killing_on_leaf", F, false, nullptr, "max |(L_B g)(e_i, e_j)| <= tol (first derivative)"},
      {"geodesic_iff_killing", F, true, nullptr, "totally_geodesic == killing_on_leaf"},
  };
  static const std::vector<CheckDef> geometry = {
      {"frame_orthonormal", R, true, &Tolerances::frame, "max |g(E_i, E_j) - delta_ij|"},
      {"metric_compatibility", R, true, &Tolerances::first_derivative,
       "max |X g(Y,Z) - g(nabla_X Y, Z) - g(Y, nabla_X Z)|"},
      {"curvature_antisymmetry", R, true, &Tolerances::nested, "max |R_ijkl + R_jikl|, |R_ijkl + R_ijlk|"},
      {"curvature_pair_symmetry", R, true, &Tolerances::nested, "max |R_ijkl - R_klij|"},
      {"first_bianchi", R, true, &Tolerances::nested, "max |R(X,Y)Z + R(Y,Z)X + R(Z,X)Y|"},
      {"riemann_two_route", R, true, &Tolerances::curvature, "index formula vs nested covariant derivatives"},
      {"ricci_symmetry", R, true, &Tolerances::first_derivative, "max |rho - rho^T|"},
      {"ricci_two_route", R, true, &Tolerances::first_derivative, "frame sum vs R^i_ijk"},
      {"scalar_two_route", R, true, &Tolerances::first_derivative, "frame trace vs g^ij rho_ij"},
      {"ricci_star_two_route", R, true, &Tolerances::first_derivative, "frame sum vs g^pq R(d_p, ., J., J d_q)"},
      {"d_squared", R, true, &Tolerances::nested, "max |d(dOmega)|"},
      {"scalar", V, false, nullptr, "tau"},
  };
  switch (s) {
    case Suite::hermitian: return hermitian;
    case Suite::lcak: return lcak;
    case Suite::conformal: return conformal;
    case Suite::gray: return gray;
    case Suite::foliation: return foliation;
    case Suite::geometry: return geometry;
  }
  return hermitian;
}

using PointResults = std::map<std::string, Measurement>;

class Recorder {
 public:
  Recorder(PointResults& out, Suite s) : out_(out), suite_(s), prefix_(suite_name(s) + ".") {}

  void set(const char* name, double v) { out_[prefix_ + name] = Measurement{v, "", false}; }
  void flag(const char* name, bool b) { set(name, b ? 1.0 : 0.0); }
  void skip(const char* name, const std::string& why) {
    auto& m = out_[prefix_ + name];
    if (!m.value && m.note.empty()) m = Measurement{std::nullopt, why, false};
  }
  /// Marks every check of the suite that has no measurement yet.
  void rest(const std::string& why, bool error) {
    for (const CheckDef& d : definitions(suite_)) {
      auto it = out_.find(prefix_ + d.name);
      if (it == out_.end()) out_[prefix_ + d.name] = Measurement{std::nullopt, why, error};
    }
  }

 private:
  PointResults& out_;
  Suite suite_;
  std::string prefix_;
};

std::string error_note(const std::exception& e) {
  if (dynamic_cast<const NotLCaK*>(&e)) return std::string("NotLCaK: ") + e.what();
  if (dynamic_cast<const DegenerateLeeField*>(&e)) return std::string("DegenerateLeeField: ") + e.what();
  if (dynamic_cast<const StencilOutOfDomain*>(&e)) return std::string("StencilOutOfDomain: ") + e.what();
  if (dynamic_cast<const NotPositiveDefinite*>(&e)) return std::string("NotPositiveDefinite: ") + e.what();
  if (dynamic_cast<const SingularMetric*>(&e)) return std::string("SingularMetric: ") + e.what();
  if (dynamic_cast<const DegenerateForm*>(&e)) return std::string("DegenerateForm: ") + e.what();
  if (dynamic_cast<const DomainError*>(&e)) return std::string("DomainError: ") + e.what();
  return e.what();
}

template <class Body>
void guarded(Recorder& rec, Body&& body) {
  try {
    body();
  } catch (const Error& e) {
    rec.rest(error_note(e), true);
  }
}

struct Context {
  const ChartManifold& M;
  const VerifyOptions& opt;
  std::optional<ConformalPair> pair;  // canonical Lee field, present when f is
  std::optional<LeeField> lee;        // canonical extracted Lee field
  std::optional<LeeField> lee_conv;   // Lee field in the selected convention
};

double scale_J(const Mat& J) { return std::max(1.0, max_abs(J) * max_abs(J)); }

void run_hermitian(const Context& c, const Point& p, Recorder& rec) {
  guarded(rec, [&] {
    const Mat g = c.M.metric(p);
    const Mat J = c.M.complex_structure(p);
    const int n = c.M.dim();
    const double sJ = scale_J(J);
    const double sg = std::max(1.0, max_abs(g)) * sJ;
    const double j2 = max_abs(Mat(J * J + Mat::Identity(n, n))) / sJ;
    const double comp = max_abs(Mat(J.transpose() * g * J - g)) / sg;
    rec.set("j_squared", j2);
    rec.set("compatibility", comp);
    const Mat Om = two_form_matrix(fundamental_form(c.M, p));
    rec.set("omega_j_invariance", max_abs(Mat(J.transpose() * Om * J - Om)) / sg);
    rec.set("omega_nondegenerate", std::fabs(Om.determinant() / g.determinant() - 1.0));
    rec.flag("almost_hermitian", j2 <= c.opt.tol.hermitian && comp <= c.opt.tol.hermitian);
  });
}

void run_lcak(const Context& c, const Point& p, Recorder& rec) {
  guarded(rec, [&] {
    const Mat g = c.M.metric(p);
    const LeeData d = solve_lee_form(fundamental_form(c.M, p), fundamental_form_derivative(c.M, p), g);
    rec.set("lee_extraction", d.relative_residual);
    rec.set("lee_duality", max_abs(Vec(g * d.B - d.omega)));
    rec.set("lee_norm2", in_convention(d, c.opt.convention).normB2);
    const bool extracted = d.relative_residual <= c.opt.tol.lee;
    if (!extracted) {
      rec.skip("lee_closed", "skipped: NotLCaK");
      rec.skip("exponent_consistency", "skipped: NotLCaK");
      rec.flag("is_lcak", false);
      rec.flag("almost_kahler", false);
      return;
    }
    const double closed = check_lee_closed(*c.lee, p);
    rec.set("lee_closed", closed);
    if (c.M.has_conformal_exponent())
      rec.set("exponent_consistency", exponent_consistency_residual(c.M, *c.lee, p));
    else
      rec.skip("exponent_consistency", "skipped: no conformal exponent");
    const bool lcak = closed <= c.opt.tol.nested;
    rec.flag("is_lcak", lcak);
    rec.flag("almost_kahler", lcak && d.normB2 < c.opt.tol.degenerate);
  });
}

void run_conformal(const Context& c, const Point& p, Recorder& rec) {
  guarded(rec, [&] {
    const ConformalPair& C = *c.pair;
    const int n = c.M.half_dim();
    rec.set("connection_transform", connection_transform_residual(C, p));
    const PTensor P = p_tensor(C.lee(), p);
    rec.set("p_symmetry", P.symmetry_residual);
    rec.set("trace_p_two_route", std::fabs(P.trace - P.trace_corrected));
    rec.set("trace_p_printed", std::fabs(P.trace - P.trace_printed));
    rec.set("lie_derivative", lie_derivative_metric(C.lee(), p).residual);
    const CurvaturePack pack = curvature_pack(C, p);
    const Tensor rhs = curvature_transform_rhs(pack, P);
    rec.set("curvature_transform", max_abs_diff(pack.R_t.up, rhs));
    double lowered = 0.0, anti = 0.0;
    const double ef = std::exp(pack.f);
    const Mat& g = pack.g;
    const int d = c.M.dim();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            const double expected = pack.R.down(i, j, k, l) + 0.5 * (g(i, l) * P.P(j, k) - g(j, l) * P.P(i, k)) +
                                    0.5 * (g(j, k) * P.P(i, l) - g(i, k) * P.P(j, l));
            lowered = std::max(lowered, std::fabs(ef * pack.R_t.down(i, j, k, l) - expected));
            anti = std::max(anti, std::fabs(rhs(l, i, j, k) + rhs(l, j, i, k)));
          }
    rec.set("curvature_transform_lowered", lowered);
    rec.set("curvature_rhs_antisymmetry", anti);
    const RicciTransformResiduals r = ricci_transform_residuals(pack, P, n);
    rec.set("ricci_transform", r.ricci);
    rec.set("ricci_star_transform", r.ricci_star);
    rec.set("scalar_transform", r.scalar);
    rec.set("scalar_star_transform", r.scalar_star);
    rec.set("scalar_transform_printed", r.scalar_printed);
    rec.set("scalar_star_transform_printed", r.scalar_star_printed);
    rec.set("frame_rescaling", r.frame_rescaling);
    rec.set("tau", pack.tau);
    rec.set("tau_star", pack.tau_star);
    rec.set("tau_t", pack.tau_t);
    rec.set("tau_t_star", pack.tau_t_star);
    rec.set("trace_p", P.trace);
    rec.set("div_b", P.div_B);
  });
}

void run_gray(const Context& c, const Point& p, Recorder& rec) {
  guarded(rec, [&] {
    const double tol = c.opt.tol.gray;
    const Mat J = c.M.complex_structure(p);
    if (!c.pair) {
      // no exponent: identities of the curvature of g itself
      const GrayReport gr = gray_residuals(riemann(c.M, p).down, J, tol);
      rec.set("identity_1", gr.residual1);
      rec.set("identity_2", gr.residual2);
      rec.set("identity_3", gr.residual3);
      rec.flag("in_l1", gr.inL1);
      rec.flag("in_l2", gr.inL2);
      rec.flag("in_l3", gr.inL3);
      rec.flag("class_chain", gr.chain_consistent());
      rec.rest("skipped: no conformal exponent", false);
      return;
    }
    const CurvaturePack pack = curvature_pack(*c.pair, p);
    const GrayReport gr = gray_residuals(pack.R_t.down, pack.J, tol);
    rec.set("identity_1", gr.residual1);
    rec.set("identity_2", gr.residual2);
    rec.set("identity_3", gr.residual3);
    rec.flag("in_l1", gr.inL1);
    rec.flag("in_l2", gr.inL2);
    rec.flag("in_l3", gr.inL3);
    rec.flag("class_chain", gr.chain_consistent());
    if (!gr.inL1) {
      rec.rest("skipped: NotInL1", false);
      return;
    }
    const PTensor P = p_tensor(c.pair->lee(), p);
    rec.set("star_scalar_difference", yabien_residual(pack, P, gr, c.M.half_dim()));
    rec.set("tau_t_equals_tau_t_star", scalar_star_equality_residual(pack));
  });
}

void run_foliation(const Context& c, const Point& p, Recorder& rec) {
  guarded(rec, [&] {
    const Tolerances& tol = c.opt.tol;
    const LeeField& lee = *c.lee_conv;
    if (lee.norm2(p) < tol.degenerate) {
      rec.rest("skipped: ω = 0", false);
      return;
    }
    const Mat g = c.M.metric(p);
    const int n = c.M.dim();
    const SplitFrame s = split_frame(lee, p, tol.degenerate);
    const Mat I = Mat::Identity(n, n);
    double proj = 0.0;
    proj = std::max(proj, max_abs(Mat(s.Q * s.Q - s.Q)));
    proj = std::max(proj, max_abs(Mat(s.Q_perp * s.Q_perp - s.Q_perp)));
    proj = std::max(proj, max_abs(Mat(s.Q * s.Q_perp)));
    proj = std::max(proj, max_abs(Mat(s.Q_perp * s.Q)));
    proj = std::max(proj, max_abs(Mat(s.Q + s.Q_perp - I)));
    proj = std::max(proj, max_abs(Vec(s.omega.transpose() * s.Q)));
    rec.set("projections", proj);
    const Mat& e = s.leaf;
    rec.set("leaf_frame_orthonormal", max_abs(Mat(e.transpose() * g * e - Mat::Identity(n - 1, n - 1))));
    rec.set("leaf_frame_in_kernel", max_abs(Vec(e.transpose() * s.omega)));

    const BundleLikeResult b = bundle_like_residual(lee, p, tol.degenerate);
    const double ap = autoparallel_residual(lee, p, tol.degenerate);
    rec.set("bundle_like", b.residual);
    rec.set("autoparallel", ap);
    rec.set("bundle_like_two_route", b.route_difference);
    rec.set("bundle_like_printed_route", b.printed_route_difference);
    rec.flag("riemannian_iff_autoparallel", (b.residual <= tol.nested) == (ap <= tol.nested));

    const LeafGeometry L = leaf_geometry(lee, p, tol.degenerate);
    rec.set("alpha_symmetry", L.alpha_symmetry);
    rec.set("mean_curvature", L.mean_curvature_residual);
    rec.set("weingarten", L.weingarten_residual);
    rec.set("weingarten_printed", L.weingarten_printed_residual);
    rec.set("gauss_frame_fields", L.gauss_residual);
    rec.set("div_along_leaf", L.div_along_leaf);
    rec.set("mean_curvature_coefficient", L.mean_curvature_coefficient);
    rec.set("gauss_coefficient", L.gauss_coefficient);

    const LeafFlags fl = minimality_and_killing(lee, p, tol.first_derivative, tol.degenerate);
    rec.flag("lee_autoparallel", ap <= tol.nested);
    rec.flag("leaves_minimal", fl.minimal);
    rec.flag("totally_geodesic", fl.totally_geodesic);
    rec.flag("killing_on_leaf", fl.killing_on_leaf);
    rec.flag("geodesic_iff_killing", fl.equivalence_holds());
  });
}

void run_geometry(const Context& c, const Point& p, Recorder& rec) {
  guarded(rec, [&] {
    const Mat g = metric_at(c.M, p);
    const int n = c.M.dim();
    const Mat E = orthonormal_frame(g);
    rec.set("frame_orthonormal", max_abs(Mat(E.transpose() * g * E - Mat::Identity(n, n))));
    rec.set("metric_compatibility", metric_compatibility_residual(c.M, p));
    const CurvatureValue Rv = riemann(c.M, p);
    const CurvatureSymmetryResiduals s = curvature_symmetries(Rv);
    rec.set("curvature_antisymmetry", std::max(s.antisym_first_pair, s.antisym_second_pair));
    rec.set("curvature_pair_symmetry", s.pair_symmetry);
    rec.set("first_bianchi", s.first_bianchi);
    rec.set("riemann_two_route", max_abs_diff(Rv.up, riemann_operator_route(c.M, p).up));
    const Mat rho = ricci_from_frame(Rv.down, E);
    rec.set("ricci_symmetry", max_abs(Mat(rho - rho.transpose())));
    rec.set("ricci_two_route", max_abs(Mat(rho - ricci_contraction(Rv.up))));
    const double tau = trace_over_frame(rho, E);
    rec.set("scalar_two_route", std::fabs(tau - (g.inverse().cwiseProduct(rho)).sum()));
    const Mat J = c.M.complex_structure(p);
    rec.set("ricci_star_two_route",
            max_abs(Mat(ricci_star_from_frame(Rv.down, J, E) - ricci_star_contraction(Rv.down, J, g))));
    const FormField dOmega = [&c](const Point& q) { return fundamental_form_derivative(c.M, q); };
    rec.set("d_squared", exterior_derivative(dOmega, p).max_abs());
    rec.set("scalar", tau);
  });
}

PointResults evaluate_point(const Context& c, const Point& p) {
  PointResults out;
  for (Suite s : c.opt.suites) {
    Recorder rec(out, s);
    switch (s) {
      case Suite::hermitian: run_hermitian(c, p, rec); break;
      case Suite::lcak: run_lcak(c, p, rec); break;
      case Suite::conformal:
        if (c.pair) run_conformal(c, p, rec);
        break;
      case Suite::gray: run_gray(c, p, rec); break;
      case Suite::foliation: run_foliation(c, p, rec); break;
      case Suite::geometry: run_geometry(c, p, rec); break;
    }
    rec.rest("not evaluated", true);
  }
  return out;
}

bool within(const CheckResult& c, double v) {
  if (c.kind == CheckKind::flag) return v == 1.0;
  return std::fabs(v) <= c.tolerance;
}

}  // namespace

const char* version() { return LCAK_VERSION_STRING; }

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> s = {Suite::hermitian, Suite::lcak,      Suite::conformal,
                                       Suite::gray,      Suite::foliation, Suite::geometry};
  return s;
}

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::hermitian: return "hermitian";
    case Suite::lcak: return "lcak";
    case Suite::conformal: return "conformal";
    case Suite::gray: return "gray";
    case Suite::foliation: return "foliation";
    case Suite::geometry: return "geometry";
  }
  return "?";
}

Suite parse_suite(const std::string& name) {
  for (Suite s : all_suites())
    if (suite_name(s) == name) return s;
  throw Error("unknown check suite: " + name);
}

std::size_t CheckResult::evaluated() const {
  return static_cast<std::size_t>(
      std::count_if(per_point.begin(), per_point.end(), [](const Measurement& m) { return m.value.has_value(); }));
}

std::optional<double> CheckResult::max_abs() const {
  std::optional<double> best;
  for (const Measurement& m : per_point)
    if (m.value) best = std::max(best.value_or(0.0), std::fabs(*m.value));
  return best;
}

bool CheckResult::passed() const {
  if (!asserted) return true;
  for (const Measurement& m : per_point) {
    if (m.error) return false;
    if (m.value && !within(*this, *m.value)) return false;
  }
  return true;
}

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

bool VerificationReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

const CheckResult* VerificationReport::find(const std::string& suite, const std::string& check) const {
  for (const SuiteResult& s : suites) {
    if (suite_name(s.suite) != suite) continue;
    for (const CheckResult& c : s.checks)
      if (c.name == check) return &c;
  }
  return nullptr;
}

VerificationReport verify(const ChartManifold& M, const VerifyOptions& options) {
  VerificationReport report;
  report.manifold = M.name();
  report.seed = options.seed;
  report.coord_names = M.coord_names();
  report.tol = options.tol;
  report.convention = options.convention;
  report.points = options.at.empty() ? sample_points(M, options.points, options.seed) : options.at;

  Context ctx{M, options, std::nullopt, std::nullopt, std::nullopt};
  ctx.lee = LeeField::extracted(M, options.tol.lee);
  {
    const double s = convention_factor(options.convention);
    const LeeField canonical = *ctx.lee;
    ctx.lee_conv = s == 1.0 ? canonical
                            : LeeField::imposed(M, [canonical, s](const Point& q) -> Vec { return s * canonical.omega(q); });
  }
  if (M.has_conformal_exponent()) ctx.pair.emplace(M, *ctx.lee);

  const std::size_t count = report.points.size();
  std::vector<PointResults> results(count);
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = evaluate_point(ctx, report.points[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w)
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) results[i] = evaluate_point(ctx, report.points[i]);
      });
    for (auto& t : workers) t.join();
  }

  for (Suite s : options.suites) {
    SuiteResult sr;
    sr.suite = s;
    if (s == Suite::conformal && !M.has_conformal_exponent()) {
      sr.skipped = "skipped: no conformal exponent";
      report.suites.push_back(std::move(sr));
      continue;
    }
    for (const CheckDef& d : definitions(s)) {
      CheckResult cr;
      cr.name = d.name;
      cr.kind = d.kind;
      cr.asserted = d.asserted;
      cr.tolerance = d.tol ? options.tol.*(d.tol) : 0.0;
      cr.description = d.description;
      const std::string key = suite_name(s) + "." + d.name;
      for (const PointResults& pr : results) cr.per_point.push_back(pr.at(key));
      sr.checks.push_back(std::move(cr));
    }
    if (s == Suite::foliation && count > 0) {
      const bool all_zero = std::all_of(results.begin(), results.end(), [](const PointResults& pr) {
        return pr.at("foliation.projections").note == "skipped: ω = 0";
      });
      if (all_zero) sr.skipped = "skipped: ω = 0";
    }
    report.suites.push_back(std::move(sr));
  }
  return report;
}

// ---------------------------------------------------------------- output

namespace {

void dump_to(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        dump_to(it.value(), out, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_to(j[i], out, indent + 2);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump_to(j[i], out, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      // keep floats recognisable as floats
      if (std::string_view(buf).find_first_of(".eEn") == std::string_view::npos) out += ".0";
      return;
    }
    default: out += j.dump();
  }
}

Json point_json(const Point& p) {
  Json a = Json::array();
  for (int i = 0; i < p.dim(); ++i) a.push_back(p[i]);
  return a;
}

const char* kind_name(CheckKind k) {
  switch (k) {
    case CheckKind::residual: return "residual";
    case CheckKind::flag: return "flag";
    case CheckKind::value: return "value";
  }
  return "?";
}

Json tolerances_json(const Tolerances& t) {
  Json j;
  j["hermitian"] = t.hermitian;
  j["form"] = t.form;
  j["frame"] = t.frame;
  j["projection"] = t.projection;
  j["lee"] = t.lee;
  j["first_derivative"] = t.first_derivative;
  j["nested"] = t.nested;
  j["curvature"] = t.curvature;
  j["gray"] = t.gray;
  j["degenerate"] = t.degenerate;
  return j;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump_to(j, out, 0);
  out += "\n";
  return out;
}

Json report_json(const VerificationReport& r) {
  Json j;
  j["schema"] = 1;
  j["version"] = version();
  j["manifold"] = r.manifold;
  j["seed"] = r.seed;
  j["conventions"] = Json{{"lee", std::string(convention_name(r.convention))},
                          {"curvature", "R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]; R(X,Y,Z,W) = g(R(X,Y)Z, W)"},
                          {"conformal", "g_t = exp(-f) g"}};
  j["coordinates"] = r.coord_names;
  Json pts = Json::array();
  for (const Point& p : r.points) pts.push_back(point_json(p));
  j["points"] = pts;
  j["tolerances"] = tolerances_json(r.tol);
  Json suites = Json::array();
  std::size_t asserted = 0, failed = 0;
  for (const SuiteResult& s : r.suites) {
    Json sj;
    sj["suite"] = suite_name(s.suite);
    if (s.skipped) {
      sj["status"] = *s.skipped;
      suites.push_back(sj);
      continue;
    }
    sj["status"] = s.passed() ? "pass" : "fail";
    Json checks = Json::array();
    for (const CheckResult& c : s.checks) {
      Json cj;
      cj["name"] = c.name;
      cj["kind"] = kind_name(c.kind);
      cj["asserted"] = c.asserted;
      if (c.kind == CheckKind::residual) cj["tolerance"] = c.tolerance;
      const auto mx = c.max_abs();
      cj["max_abs"] = mx ? Json(*mx) : Json(nullptr);
      cj["evaluated"] = c.evaluated();
      if (c.asserted) {
        ++asserted;
        if (!c.passed()) ++failed;
        cj["passed"] = c.passed();
      }
      Json vals = Json::array();
      Json notes;
      for (std::size_t i = 0; i < c.per_point.size(); ++i) {
        const Measurement& m = c.per_point[i];
        vals.push_back(m.value ? Json(*m.value) : Json(nullptr));
        if (!m.note.empty()) notes[std::to_string(i)] = m.note;
      }
      cj["values"] = vals;
      if (!notes.empty()) cj["notes"] = notes;
      cj["description"] = c.description;
      checks.push_back(cj);
    }
    sj["checks"] = checks;
    suites.push_back(sj);
  }
  j["suites"] = suites;
  j["summary"] = Json{{"asserted", asserted}, {"failed", failed}, {"passed", r.passed()}, {"exit_code", r.exit_code()}};
  return j;
}

std::string report_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "manifold " << r.manifold << "  seed " << r.seed << "  points " << r.points.size() << "  lee convention "
     << convention_name(r.convention) << "\n";
  std::size_t asserted = 0, failed = 0;
  for (const SuiteResult& s : r.suites) {
    os << "\n[" << suite_name(s.suite) << "]";
    if (s.skipped) {
      os << " " << *s.skipped << "\n";
      continue;
    }
    os << "\n";
    for (const CheckResult& c : s.checks) {
      const auto mx = c.max_abs();
      std::string tag;
      if (c.asserted) {
        ++asserted;
        tag = c.passed() ? "PASS" : "FAIL";
        if (!c.passed()) ++failed;
      } else {
        tag = "info";
      }
      if (c.evaluated() == 0) tag = c.asserted && !c.passed() ? "FAIL" : "skip";
      os << "  " << tag << "  " << c.name;
      if (c.kind == CheckKind::flag) {
        std::size_t yes = 0;
        for (const Measurement& m : c.per_point)
          if (m.value && *m.value == 1.0) ++yes;
        os << "  true at " << yes << "/" << c.evaluated();
      } else if (mx) {
        os << "  max " << fmt(*mx);
        if (c.kind == CheckKind::residual) os << "  tol " << fmt(c.tolerance);
      }
      for (const Measurement& m : c.per_point)
        if (!m.note.empty()) {
          os << "  (" << m.note << ")";
          break;
        }
      os << "\n";
    }
  }
  os << "\n" << (asserted - failed) << "/" << asserted << " asserted checks passed\n";
  return os.str();
}

// ---------------------------------------------------------------- eval

const std::vector<std::string>& eval_operations() {
  static const std::vector<std::string> ops = {
      "metric",        "complex-structure",  "fundamental-form", "d-fundamental-form",
      "lee-form",      "lee-field",          "christoffel",      "riemann",
      "ricci",         "scalar",             "ricci-star",       "scalar-star",
      "p-tensor",      "trace-p",            "div-b",            "leaf-frame",
      "div-along-leaf", "mean-curvature-coefficient", "gray",    "lie-derivative",
      "almost-hermitian"};
  return ops;
}

namespace {

Json matrix_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json form_json(const FormValue& a, const std::vector<std::string>& names) {
  Json j = Json::object();
  for (std::size_t r = 0; r < a.size(); ++r) {
    std::string key;
    for (std::size_t t = 0; t < a.indices()[r].size(); ++t) {
      if (t) key += "^";
      key += "d" + names[static_cast<std::size_t>(a.indices()[r][t])];
    }
    j[key] = a.values()[static_cast<Eigen::Index>(r)];
  }
  return j;
}

Json vector_json(const Vec& v, const std::vector<std::string>& names) {
  Json j = Json::object();
  for (int i = 0; i < v.size(); ++i) j["d/d" + names[static_cast<std::size_t>(i)]] = v[i];
  return j;
}

Json tensor_json(const Tensor& t) {
  Json j = Json::array();
  for (double v : t.data()) j.push_back(v);
  return j;
}

LeeField convention_field(const ChartManifold& M, LeeConvention c, const Tolerances& tol) {
  const LeeField canonical = LeeField::extracted(M, tol.lee);
  const double s = convention_factor(c);
  if (s == 1.0) return canonical;
  return LeeField::imposed(M, [canonical, s](const Point& q) -> Vec { return s * canonical.omega(q); });
}

}  // namespace

Json evaluate_op(const ChartManifold& M, const std::string& op, const Point& p, LeeConvention convention,
                 const Tolerances& tol) {
  const auto& names = M.coord_names();
  Json value;
  if (op == "metric") {
    value = matrix_json(metric_at(M, p));
  } else if (op == "complex-structure") {
    value = matrix_json(M.complex_structure(p));
  } else if (op == "fundamental-form") {
    value = form_json(fundamental_form(M, p), names);
  } else if (op == "d-fundamental-form") {
    value = form_json(fundamental_form_derivative(M, p), names);
  } else if (op == "lee-form") {
    value = form_json(one_form(in_convention(extract_lee_form(M, p, tol.lee), convention).omega), names);
  } else if (op == "lee-field") {
    const LeeData d = in_convention(extract_lee_form(M, p, tol.lee), convention);
    value = Json{{"B", vector_json(d.B, names)}, {"norm2", d.normB2}};
  } else if (op == "christoffel") {
    value = tensor_json(christoffel(M, p).gamma);
  } else if (op == "riemann") {
    const CurvatureValue Rv = riemann(M, p);
    value = Json{{"up", tensor_json(Rv.up)}, {"down", tensor_json(Rv.down)}};
  } else if (op == "ricci") {
    value = matrix_json(ricci(M, p));
  } else if (op == "scalar") {
    value = scalar(M, p);
  } else if (op == "ricci-star") {
    value = matrix_json(ricci_star(M, p));
  } else if (op == "scalar-star") {
    value = scalar_star(M, p);
  } else if (op == "p-tensor") {
    value = matrix_json(p_tensor(LeeField::extracted(M, tol.lee), p).P);
  } else if (op == "trace-p") {
    const PTensor P = p_tensor(LeeField::extracted(M, tol.lee), p);
    value = Json{{"trace", P.trace}, {"div_b", P.div_B}, {"norm2", P.normB2},
                 {"closed_form", P.trace_corrected}, {"printed_closed_form", P.trace_printed}};
  } else if (op == "div-b") {
    value = p_tensor(convention_field(M, convention, tol), p).div_B;
  } else if (op == "leaf-frame") {
    const SplitFrame s = split_frame(convention_field(M, convention, tol), p, tol.degenerate);
    Json frame = Json::array();
    for (int i = 0; i < s.leaf.cols(); ++i) frame.push_back(vector_json(s.leaf.col(i), names));
    value = Json{{"leaf", frame}, {"normal", vector_json(s.unit_normal, names)}};
  } else if (op == "div-along-leaf") {
    value = leaf_geometry(convention_field(M, convention, tol), p, tol.degenerate).div_along_leaf;
  } else if (op == "mean-curvature-coefficient") {
    value = leaf_geometry(convention_field(M, convention, tol), p, tol.degenerate).mean_curvature_coefficient;
  } else if (op == "gray") {
    const Mat J = M.complex_structure(p);
    const GrayReport g = M.has_conformal_exponent() ? gray_residuals(ConformalPair(M), p, tol.gray)
                                                    : gray_residuals(riemann(M, p).down, J, tol.gray);
    value = Json{{"residual1", g.residual1}, {"residual2", g.residual2}, {"residual3", g.residual3},
                 {"inL1", g.inL1}, {"inL2", g.inL2}, {"inL3", g.inL3}};
  } else if (op == "lie-derivative") {
    value = matrix_json(lie_derivative_metric(convention_field(M, convention, tol), p).lie);
  } else if (op == "almost-hermitian") {
    const AlmostHermitianResiduals h = check_almost_hermitian(M, p);
    value = Json{{"j_squared", h.j_squared}, {"compatibility", h.compatibility}};
  } else {
    throw Error("unknown operation: " + op);
  }
  Json out;
  out["schema"] = 1;
  out["manifold"] = M.name();
  out["op"] = op;
  out["at"] = point_json(p);
  out["convention"] = std::string(convention_name(convention));
  out["value"] = value;
  return out;
}

}  // namespace lcak

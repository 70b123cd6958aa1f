#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "lcak/chart.hpp"
#include "lcak/hermitian.hpp"

namespace lcak {

using Json = nlohmann::ordered_json;

/// Tolerance classes shared by the checks.
/// Library version, recorded in every JSON report.
const char* version();

struct Tolerances {
  double hermitian = 1e-9;      // J^2 = -I, g-compatibility (relative to entry scale)
  double form = 1e-8;           // algebraic identities of Omega, omega, leaf frame
  double frame = 1e-10;         // orthonormality of Gram-Schmidt frames
  double projection = 1e-9;     // projector algebra of Q, Q-perp
  double lee = lee_tolerance;   // relative Lee extraction residual
  double first_derivative = 1e-6;
  double nested = 1e-5;         // identities involving two nested derivatives of metric data
  double curvature = 1e-4;
  double gray = 1e-4;
  double degenerate = 1e-8;     // |B|^2 below which the foliation is undefined
};

enum class Suite { hermitian, lcak, conformal, gray, foliation, geometry };

const std::vector<Suite>& all_suites();
std::string suite_name(Suite s);
Suite parse_suite(const std::string& name);

struct VerifyOptions {
  std::vector<Suite> suites = all_suites();
  std::size_t points = 25;
  std::uint64_t seed = 7;
  Tolerances tol;
  LeeConvention convention = LeeConvention::canonical;
  unsigned jobs = 1;
  /// Explicit points; when non-empty the sampler is not used.
  std::vector<Point> at;
};

enum class CheckKind {
  residual,  // asserted or reported value compared against a tolerance
  flag,      // 1 = true, 0 = false
  value,     // reported quantity
};

/// One measurement at one point; `value` is empty when the check could not
/// be evaluated there (`note` says why: a skip or an error).
struct Measurement {
  std::optional<double> value;
  std::string note;
  bool error = false;
};

struct CheckResult {
  std::string name;
  CheckKind kind = CheckKind::residual;
  bool asserted = false;
  double tolerance = 0.0;
  std::string description;
  std::vector<Measurement> per_point;

  std::size_t evaluated() const;
  /// max |value| over evaluated points (residual and value kinds).
  std::optional<double> max_abs() const;
  /// Asserted checks pass when every evaluated point is within tolerance
  /// (flags: equal to 1) and no point raised an error.
  bool passed() const;
};

struct SuiteResult {
  Suite suite = Suite::hermitian;
  std::optional<std::string> skipped;  // reason when the whole suite is skipped
  std::vector<CheckResult> checks;

  bool passed() const;
};

struct VerificationReport {
  std::string manifold;
  std::uint64_t seed = 0;
  std::vector<Point> points;
  std::vector<std::string> coord_names;
  Tolerances tol;
  LeeConvention convention = LeeConvention::canonical;
  std::vector<SuiteResult> suites;

  bool passed() const;
  int exit_code() const { return passed() ? 0 : 2; }
  const CheckResult* find(const std::string& suite, const std::string& check) const;
};

VerificationReport verify(const ChartManifold& M, const VerifyOptions& options);

Json report_json(const VerificationReport& r);
std::string report_text(const VerificationReport& r);

/// JSON text with 2-space indentation and every floating-point number
/// written with 17 significant digits (%.17g); non-finite numbers become null.
std::string dump_json(const Json& j);

/// Names accepted by evaluate_op.
const std::vector<std::string>& eval_operations();

/// Single-operation inspection at one point; components in coordinate order.
Json evaluate_op(const ChartManifold& M, const std::string& op, const Point& p, LeeConvention convention,
                 const Tolerances& tol = {});

}  // namespace lcak

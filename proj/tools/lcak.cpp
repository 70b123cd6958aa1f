// Command-line front end: list, describe, verify, eval.
//
// Exit codes: 0 all asserted checks pass, 2 a check failed or an evaluation
// raised a geometric error, 3 the manifold could not be loaded.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lcak/definition.hpp"
#include "lcak/errors.hpp"
#include "lcak/hermitian.hpp"
#include "lcak/verify.hpp"
#include "lcak/zoo.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 2;
constexpr int exit_definition = 3;

struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

lcak::ChartManifold resolve(const std::string& name_or_path) {
  if (const lcak::ZooEntry* e = lcak::find_zoo_entry(name_or_path)) return e->manifold();
  const std::filesystem::path path(name_or_path);
  if (!std::filesystem::exists(path))
    throw LoadError("'" + name_or_path + "' is neither a zoo manifold nor an existing file");
  return lcak::load_definition(path);
}

std::vector<double> parse_coords(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw CLI::ValidationError("--at", "bad coordinate '" + item + "'");
    out.push_back(v);
  }
  return out;
}

lcak::Point to_point(const lcak::ChartManifold& M, const std::string& text) {
  const std::vector<double> c = parse_coords(text);
  if (static_cast<int>(c.size()) != M.dim())
    throw LoadError("--at needs " + std::to_string(M.dim()) + " coordinates, got " + std::to_string(c.size()));
  lcak::Vec v(M.dim());
  for (int i = 0; i < M.dim(); ++i) v[i] = c[static_cast<std::size_t>(i)];
  return lcak::Point(v);
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(output, std::ios::binary);
  if (!os) throw LoadError("cannot write " + output);
  os << text;
}

void add_tolerance_flags(CLI::App* cmd, lcak::Tolerances& t) {
  cmd->add_option("--tol-hermitian", t.hermitian, "J^2 = -I and g-compatibility");
  cmd->add_option("--tol-form", t.form, "form identities");
  cmd->add_option("--tol-frame", t.frame, "frame orthonormality");
  cmd->add_option("--tol-projection", t.projection, "projector algebra");
  cmd->add_option("--tol-lee", t.lee, "relative Lee extraction residual");
  cmd->add_option("--tol-first", t.first_derivative, "first-derivative identities");
  cmd->add_option("--tol-nested", t.nested, "nested-derivative identities");
  cmd->add_option("--tol-curvature", t.curvature, "curvature transforms");
  cmd->add_option("--tol-gray", t.gray, "Gray class membership");
  cmd->add_option("--tol-degenerate", t.degenerate, "|B|^2 below which the foliation is undefined");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of locally conformal almost Kaehler geometry"};
  app.set_version_flag("--version", lcak::version());
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "list the built-in manifolds");

  std::string describe_name;
  bool describe_source = false;
  auto* describe = app.add_subcommand("describe", "show a manifold and its expected flags");
  describe->add_option("manifold", describe_name, "zoo name or definition file")->required();
  describe->add_flag("--source", describe_source, "print the canonical definition text");

  std::string verify_name, checks = "all", format = "text", convention_text = "canonical", output;
  std::string verify_at;
  lcak::VerifyOptions options;
  auto* verify = app.add_subcommand("verify", "run the check suites at sampled points");
  verify->add_option("manifold", verify_name, "zoo name or definition file")->required();
  verify->add_option("--checks", checks, "all or a comma list of hermitian,lcak,conformal,gray,foliation,geometry")
      ->capture_default_str();
  verify->add_option("--points", options.points, "number of sample points")->capture_default_str();
  verify->add_option("--seed", options.seed, "sampler seed")->capture_default_str();
  verify->add_option("--jobs", options.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  verify->add_option("--lee-convention", convention_text, "canonical or paper-example-halved")
      ->check(CLI::IsMember({"canonical", "paper-example-halved"}))
      ->capture_default_str();
  verify->add_option("--at", verify_at, "evaluate at this point only (comma separated)");
  verify->add_option("--output,-o", output, "write the report to a file");
  add_tolerance_flags(verify, options.tol);

  std::string eval_name, eval_op, eval_at, eval_convention = "canonical";
  lcak::Tolerances eval_tol;
  auto* eval = app.add_subcommand("eval", "evaluate one operation at one point, as JSON");
  eval->add_option("manifold", eval_name, "zoo name or definition file")->required();
  eval->add_option("operation", eval_op, "operation name")->required()->check(CLI::IsMember(lcak::eval_operations()));
  eval->add_option("--at", eval_at, "point (comma separated)")->required();
  eval->add_option("--lee-convention", eval_convention, "canonical or paper-example-halved")
      ->check(CLI::IsMember({"canonical", "paper-example-halved"}))
      ->capture_default_str();
  add_tolerance_flags(eval, eval_tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*list) {
      for (const lcak::ZooEntry& e : lcak::zoo()) std::printf("%-22s %s\n", e.name.c_str(), e.provenance.c_str());
      return exit_ok;
    }
    if (*describe) {
      const lcak::ChartManifold M = resolve(describe_name);
      std::cout << "name        " << M.name() << "\n";
      std::cout << "dimension   " << M.dim() << "\n";
      std::cout << "coordinates";
      for (const auto& c : M.coord_names()) std::cout << " " << c;
      std::cout << "\nconformal   " << (M.has_conformal_exponent() ? "yes" : "no") << "\n";
      if (const lcak::ZooEntry* e = lcak::find_zoo_entry(describe_name)) {
        const auto flag = [](std::optional<bool> b) { return b ? (*b ? "true" : "false") : "n/a"; };
        std::cout << "provenance  " << e->provenance << "\n";
        std::cout << "expected    almost_hermitian=" << (e->expected.almost_hermitian ? "true" : "false")
                  << " lcak=" << (e->expected.lcak ? "true" : "false")
                  << " almost_kahler=" << (e->expected.almost_kahler ? "true" : "false")
                  << " lee_autoparallel=" << flag(e->expected.lee_autoparallel)
                  << " leaves_minimal=" << flag(e->expected.leaves_minimal) << "\n";
      }
      if (describe_source) std::cout << "\n" << lcak::serialize_definition(M);
      return exit_ok;
    }
    if (*verify) {
      const lcak::ChartManifold M = resolve(verify_name);
      options.convention = lcak::parse_convention(convention_text);
      if (checks != "all") {
        options.suites.clear();
        std::stringstream ss(checks);
        std::string item;
        while (std::getline(ss, item, ',')) options.suites.push_back(lcak::parse_suite(item));
      }
      if (!verify_at.empty()) options.at = {to_point(M, verify_at)};
      const lcak::VerificationReport report = lcak::verify(M, options);
      emit(format == "json" ? lcak::dump_json(lcak::report_json(report)) : lcak::report_text(report), output);
      return report.exit_code();
    }
    if (*eval) {
      const lcak::ChartManifold M = resolve(eval_name);
      const lcak::Point p = to_point(M, eval_at);
      if (!M.in_domain(p)) throw lcak::DomainError("point is outside the chart domain");
      std::cout << lcak::dump_json(
          lcak::evaluate_op(M, eval_op, p, lcak::parse_convention(eval_convention), eval_tol));
      return exit_ok;
    }
  } catch (const lcak::DefinitionError& e) {
    std::cerr << "definition error: " << e.what() << "\n";
    return exit_definition;
  } catch (const lcak::SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return exit_definition;
  } catch (const lcak::UnknownIdentifier& e) {
    std::cerr << "definition error: " << e.what() << "\n";
    return exit_definition;
  } catch (const LoadError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_definition;
  } catch (const lcak::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_failed;
  }
  return exit_ok;
}

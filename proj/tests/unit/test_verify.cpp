#include "doctest.h"
#include "lcak/verify.hpp"
#include "support.hpp"

TEST_CASE("example fixture passes every asserted check") {
  const auto M = test::fixture("paper-example");
  lcak::VerifyOptions o;
  o.points = 25;
  o.seed = 7;
  const auto r = lcak::verify(M, o);
  CHECK(r.passed());
  CHECK(r.exit_code() == 0);
  CHECK(r.points.size() == 25);
  const auto* div = r.find("foliation", "div_along_leaf");
  REQUIRE(div);
  CHECK(div->max_abs().value() == doctest::Approx(10.0).epsilon(1e-8));
  const auto* printed = r.find("conformal", "scalar_transform_printed");
  REQUIRE(printed);
  CHECK(!printed->asserted);
  CHECK(printed->max_abs().value() > 1.0);
}

TEST_CASE("reports are identical for any number of workers") {
  const auto M = test::fixture("paper-example");
  lcak::VerifyOptions o;
  o.points = 12;
  o.jobs = 1;
  const std::string a = lcak::dump_json(lcak::report_json(lcak::verify(M, o)));
  o.jobs = 5;
  const std::string b = lcak::dump_json(lcak::report_json(lcak::verify(M, o)));
  CHECK(a == b);
}

TEST_CASE("JSON layout") {
  const auto M = test::fixture("global-conformal");
  lcak::VerifyOptions o;
  o.points = 2;
  o.suites = {lcak::Suite::lcak};
  const auto j = lcak::report_json(lcak::verify(M, o));
  CHECK(j["schema"] == 1);
  CHECK(j["manifold"] == "global-conformal");
  CHECK(j["conventions"]["lee"] == "canonical");
  CHECK(j["points"].size() == 2);
  CHECK(j["suites"][0]["suite"] == "lcak");
  CHECK(j["suites"][0]["checks"][0]["values"].size() == 2);
  CHECK(j["summary"]["exit_code"] == 0);
  const std::string text = lcak::dump_json(j);
  CHECK(text.find("\"tolerances\"") != std::string::npos);
  CHECK(text.back() == '\n');
}

TEST_CASE("floats are written with 17 significant digits") {
  lcak::Json j;
  j["x"] = 0.1;
  j["y"] = 2.0;
  j["z"] = 1.0 / 3.0;
  const std::string s = lcak::dump_json(j);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("2.0") != std::string::npos);
  CHECK(s.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("suite skips and negative controls") {
  lcak::VerifyOptions o;
  o.points = 5;
  o.suites = {lcak::Suite::foliation};
  const auto flat = lcak::verify(test::fixture("flat-kahler"), o);
  REQUIRE(flat.suites.size() == 1);
  CHECK(flat.suites[0].skipped.value_or("") == "skipped: ω = 0");
  CHECK(flat.exit_code() == 0);

  o.suites = {lcak::Suite::lcak};
  const auto broken = lcak::verify(test::fixture("control-broken"), o);
  CHECK(broken.exit_code() == 2);
  CHECK(!broken.find("lcak", "lee_extraction")->passed());

  o.suites = {lcak::Suite::conformal};
  const auto nof = lcak::verify(test::fixture("control-nonclosed"), o);
  CHECK(nof.suites[0].skipped.value_or("") == "skipped: no conformal exponent");
}

TEST_CASE("halved convention scales the Lee quantities") {
  lcak::VerifyOptions o;
  o.points = 3;
  o.suites = {lcak::Suite::lcak, lcak::Suite::foliation};
  o.convention = lcak::LeeConvention::paper_example_halved;
  const auto r = lcak::verify(test::fixture("paper-example"), o);
  CHECK(r.find("lcak", "lee_norm2")->max_abs().value() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.find("foliation", "div_along_leaf")->max_abs().value() == doctest::Approx(5.0).epsilon(1e-8));
  CHECK(r.passed());
}

TEST_CASE("eval operations") {
  const auto M = test::fixture("paper-example");
  const lcak::Point p{1, 2, 0, 0};
  for (const std::string& op : lcak::eval_operations()) {
    const auto j = lcak::evaluate_op(M, op, p, lcak::LeeConvention::canonical, {});
    CHECK(j["op"] == op);
  }
  const auto lee = lcak::evaluate_op(M, "lee-form", p, lcak::LeeConvention::canonical, {});
  CHECK(lee["value"]["dx2"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(lee["value"]["dx1"].get<double>() == 0.0);
  CHECK_THROWS(lcak::evaluate_op(M, "nope", p, lcak::LeeConvention::canonical, {}));
}

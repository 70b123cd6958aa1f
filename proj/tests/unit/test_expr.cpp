#include <cmath>
#include <random>
#include <stack>
#include <string>
#include <vector>

#include "doctest.h"
#include "lcak/errors.hpp"
#include "lcak/expr.hpp"

using lcak::Expr;
using lcak::parse_expr;

namespace {

const std::vector<std::string> xy = {"x1", "x2", "y1", "y2"};

double eval_at(const std::string& src, std::vector<double> c) {
  return parse_expr(src, xy).eval(c);
}

// Independent evaluator: tokenize, shunting-yard to RPN, stack machine.
// Domain failures are reported through `ok`.
struct Oracle {
  bool ok = true;

  static int prec(char op) {
    switch (op) {
      case '+': case '-': return 1;
      case '*': case '/': return 2;
      case 'u': return 3;
      case '^': return 4;
    }
    return 0;
  }

  double apply(const std::string& fn, double a) {
    if (fn == "exp") return std::exp(a);
    if (fn == "sin") return std::sin(a);
    if (fn == "cos") return std::cos(a);
    if (fn == "abs") return std::fabs(a);
    if (fn == "ln") {
      if (a <= 0) ok = false;
      return a > 0 ? std::log(a) : 0.0;
    }
    if (fn == "sqrt") {
      if (a < 0) ok = false;
      return a >= 0 ? std::sqrt(a) : 0.0;
    }
    ok = false;
    return 0.0;
  }

  double run(const std::string& s, const std::vector<double>& c) {
    std::vector<std::string> out;
    std::vector<std::string> ops;
    bool expect_operand = true;
    std::size_t i = 0;
    auto top_prec = [&] { return ops.empty() || ops.back().size() != 1 ? 0 : prec(ops.back()[0]); };
    while (i < s.size()) {
      const char ch = s[i];
      if (ch == ' ') { ++i; continue; }
      if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        std::size_t j = i;
        while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
        out.push_back(s.substr(i, j - i));
        i = j;
        expect_operand = false;
      } else if (std::isalpha(static_cast<unsigned char>(ch))) {
        std::size_t j = i;
        while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
        const std::string id = s.substr(i, j - i);
        i = j;
        if (id.size() == 2 && (id[0] == 'x' || id[0] == 'y')) {
          out.push_back(id);
          expect_operand = false;
        } else {
          ops.push_back(id);  // function, followed by '('
        }
      } else if (ch == '(') {
        ops.push_back("(");
        ++i;
        expect_operand = true;
      } else if (ch == ')') {
        while (ops.back() != "(") { out.push_back(ops.back()); ops.pop_back(); }
        ops.pop_back();
        if (!ops.empty() && ops.back().size() > 1) { out.push_back(ops.back()); ops.pop_back(); }
        ++i;
        expect_operand = false;
      } else {
        char op = ch;
        if (op == '-' && expect_operand) op = 'u';
        const int p = prec(op);
        const bool right = op == '^' || op == 'u';
        if (op != 'u')
          while (top_prec() > 0 && (top_prec() > p || (!right && top_prec() == p))) {
            out.push_back(ops.back());
            ops.pop_back();
          }
        ops.push_back(std::string(1, op));
        ++i;
        expect_operand = true;
      }
    }
    while (!ops.empty()) { out.push_back(ops.back()); ops.pop_back(); }

    std::vector<double> st;
    for (const std::string& t : out) {
      if (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '.') {
        st.push_back(std::stod(t));
      } else if (t.size() == 2 && (t[0] == 'x' || t[0] == 'y')) {
        st.push_back(c[static_cast<std::size_t>((t[0] == 'x' ? 0 : 2) + (t[1] - '1'))]);
      } else if (t == "u") {
        st.back() = -st.back();
      } else if (t.size() == 1) {
        const double b = st.back(); st.pop_back();
        const double a = st.back(); st.pop_back();
        double r = 0.0;
        switch (t[0]) {
          case '+': r = a + b; break;
          case '-': r = a - b; break;
          case '*': r = a * b; break;
          case '/': if (b == 0) ok = false; r = a / b; break;
          case '^': if (a == 0 && b < 0) ok = false; r = std::pow(a, b); break;
        }
        if (!std::isfinite(r)) ok = false;
        st.push_back(r);
      } else {
        st.back() = apply(t, st.back());
        if (!std::isfinite(st.back())) ok = false;
      }
    }
    return st.back();
  }
};

struct Generator {
  std::mt19937_64 rng;
  explicit Generator(std::uint64_t seed) : rng(seed) {}

  int pick(int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

  std::string atom() {
    static const char* vars[] = {"x1", "x2", "y1", "y2"};
    static const char* nums[] = {"1", "2", "0.5", "3.25", "0.1", "7"};
    return pick(2) ? vars[pick(4)] : nums[pick(6)];
  }

  std::string expr(int depth) {
    if (depth == 0) return atom();
    switch (pick(8)) {
      case 0: return expr(depth - 1) + " + " + expr(depth - 1);
      case 1: return expr(depth - 1) + " - " + expr(depth - 1);
      case 2: return expr(depth - 1) + "*" + expr(depth - 1);
      case 3: return expr(depth - 1) + "/" + expr(depth - 1);
      case 4: {
        static const char* exps[] = {"2", "3", "-1", "(-2)", "0"};
        return "(" + expr(depth - 1) + ")^" + exps[pick(5)];
      }
      case 5: return "-" + expr(depth - 1);
      case 6: {
        static const char* fns[] = {"exp", "ln", "sin", "cos", "sqrt", "abs"};
        return std::string(fns[pick(6)]) + "(" + expr(depth - 1) + ")";
      }
      default: return "(" + expr(depth - 1) + ")";
    }
  }
};

}  // namespace

TEST_CASE("parse builds the expected tree") {
  CHECK(parse_expr("1/x2^2", xy).to_sexpr() == "(/ 1 (^ x2 2))");
  CHECK(parse_expr("-ln(x2)", xy).to_sexpr() == "(neg (ln x2))");
  CHECK(parse_expr("-x1^2", xy).to_sexpr() == "(neg (^ x1 2))");
  CHECK(parse_expr("2^3^2", xy).eval(std::vector<double>{0, 0, 0, 0}) == doctest::Approx(512.0));
  CHECK(parse_expr("x1 - x2 - y1", xy).eval(std::vector<double>{1, 2, 3, 0}) == doctest::Approx(-4.0));
}

TEST_CASE("undeclared coordinate is an unknown identifier") {
  const std::vector<std::string> two = {"x1", "x2"};
  CHECK_THROWS_AS(parse_expr("x3", two), lcak::UnknownIdentifier);
  try {
    parse_expr("1 + x3", two);
  } catch (const lcak::UnknownIdentifier& e) {
    CHECK(e.name() == "x3");
    CHECK(e.position() == 4);
  }
}

TEST_CASE("syntax errors carry positions") {
  CHECK_THROWS_AS(parse_expr("1 +", xy), lcak::SyntaxError);
  CHECK_THROWS_AS(parse_expr("(x1", xy), lcak::SyntaxError);
  CHECK_THROWS_AS(parse_expr("x1 x2", xy), lcak::SyntaxError);
  try {
    parse_expr("x1 ^ x2", xy);
    FAIL("coordinate exponent accepted");
  } catch (const lcak::SyntaxError& e) {
    CHECK(e.position() >= 4);
  }
}

TEST_CASE("evaluation and domain errors") {
  CHECK(eval_at("1/x2^2", {0, 2, 0, 0}) == doctest::Approx(0.25));
  CHECK(eval_at("-ln(x2)", {0, 1, 0, 0}) == 0.0);
  CHECK_THROWS_AS(eval_at("1/x2", {0, 0, 0, 0}), lcak::DomainError);
  CHECK_THROWS_AS(eval_at("ln(x1)", {-1, 0, 0, 0}), lcak::DomainError);
  CHECK_THROWS_AS(eval_at("sqrt(x1)", {-1, 0, 0, 0}), lcak::DomainError);
  CHECK_THROWS_AS(eval_at("x1^0.5", {-1, 0, 0, 0}), lcak::DomainError);
  CHECK(eval_at("x1^3", {-2, 0, 0, 0}) == -8.0);
  CHECK(eval_at("abs(x1)", {-2, 0, 0, 0}) == 2.0);
}

TEST_CASE("printing round-trips through the parser") {
  Generator gen(3);
  for (int k = 0; k < 300; ++k) {
    const std::string src = gen.expr(4);
    const Expr e = parse_expr(src, xy);
    const Expr again = parse_expr(e.to_string(), xy);
    CHECK_MESSAGE(again.to_sexpr() == e.to_sexpr(), src);
  }
}

TEST_CASE("agrees with an independent shunting-yard evaluator on 1000 random expressions") {
  Generator gen(20260101);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  int compared = 0, domain = 0;
  for (int k = 0; k < 1000; ++k) {
    const std::string src = gen.expr(1 + k % 4);
    const std::vector<double> c = {coord(rng), coord(rng), coord(rng), coord(rng)};
    Oracle oracle;
    const double expected = oracle.run(src, c);
    const Expr e = parse_expr(src, xy);
    if (!oracle.ok) {
      CHECK_THROWS_AS_MESSAGE(e.eval(c), lcak::DomainError, src);
      ++domain;
      continue;
    }
    const double got = e.eval(c);
    CHECK_MESSAGE(std::fabs(got - expected) <= 1e-12 * std::max(1.0, std::fabs(expected)), src);
    ++compared;
  }
  CHECK(compared > 600);
  CHECK(domain > 0);
}

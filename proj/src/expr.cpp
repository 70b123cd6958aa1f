#include "lcak/expr.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <sstream>

#include "lcak/errors.hpp"

namespace lcak {

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_number(double v) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprOp::number;
  n->value = v;
  return n;
}

NodePtr make_node(ExprOp op, NodePtr lhs, NodePtr rhs = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

const char* function_name(ExprOp op) {
  switch (op) {
    case ExprOp::exp: return "exp";
    case ExprOp::ln: return "ln";
    case ExprOp::sin: return "sin";
    case ExprOp::cos: return "cos";
    case ExprOp::sqrt: return "sqrt";
    case ExprOp::abs: return "abs";
    default: return nullptr;
  }
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
  return v;
}

bool is_integral(double b) { return std::isfinite(b) && std::floor(b) == b; }

double eval_node(const ExprNode& n, std::span<const double> x) {
  switch (n.op) {
    case ExprOp::number: return n.value;
    case ExprOp::coordinate: return x[static_cast<std::size_t>(n.index)];
    case ExprOp::negate: return -eval_node(*n.lhs, x);
    case ExprOp::add: return checked(eval_node(*n.lhs, x) + eval_node(*n.rhs, x), "+");
    case ExprOp::subtract: return checked(eval_node(*n.lhs, x) - eval_node(*n.rhs, x), "-");
    case ExprOp::multiply: return checked(eval_node(*n.lhs, x) * eval_node(*n.rhs, x), "*");
    case ExprOp::divide: {
      const double a = eval_node(*n.lhs, x);
      const double b = eval_node(*n.rhs, x);
      if (b == 0.0) throw DomainError("division by zero");
      return checked(a / b, "/");
    }
    case ExprOp::power: {
      const double a = eval_node(*n.lhs, x);
      const double b = eval_node(*n.rhs, x);
      if (!is_integral(b) && a <= 0.0) throw DomainError("non-integer power of non-positive base");
      if (a == 0.0 && b < 0.0) throw DomainError("negative power of zero");
      return checked(std::pow(a, b), "^");
    }
    case ExprOp::exp: return checked(std::exp(eval_node(*n.lhs, x)), "exp");
    case ExprOp::ln: {
      const double a = eval_node(*n.lhs, x);
      if (a <= 0.0) throw DomainError("ln of non-positive argument");
      return std::log(a);
    }
    case ExprOp::sin: return std::sin(eval_node(*n.lhs, x));
    case ExprOp::cos: return std::cos(eval_node(*n.lhs, x));
    case ExprOp::sqrt: {
      const double a = eval_node(*n.lhs, x);
      if (a < 0.0) throw DomainError("sqrt of negative argument");
      return std::sqrt(a);
    }
    case ExprOp::abs: return std::fabs(eval_node(*n.lhs, x));
  }
  return 0.0;
}

bool node_depends(const ExprNode& n) {
  if (n.op == ExprOp::coordinate) return true;
  return (n.lhs && node_depends(*n.lhs)) || (n.rhs && node_depends(*n.rhs));
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Printing precedence: larger binds tighter.
int precedence(const ExprNode& n) {
  switch (n.op) {
    case ExprOp::add:
    case ExprOp::subtract: return 1;
    case ExprOp::multiply:
    case ExprOp::divide: return 2;
    case ExprOp::negate: return 3;
    case ExprOp::power: return 4;
    case ExprOp::number: return n.value < 0 ? 3 : 5;
    default: return 5;
  }
}

void print(const ExprNode& n, std::ostream& os);

void print_child(const ExprNode& child, bool parens, std::ostream& os) {
  if (parens) os << '(';
  print(child, os);
  if (parens) os << ')';
}

void print(const ExprNode& n, std::ostream& os) {
  const int p = precedence(n);
  switch (n.op) {
    case ExprOp::number: os << format_number(n.value); return;
    case ExprOp::coordinate: os << n.name; return;
    case ExprOp::negate:
      os << '-';
      print_child(*n.lhs, precedence(*n.lhs) < p, os);
      return;
    case ExprOp::add:
    case ExprOp::subtract:
    case ExprOp::multiply:
    case ExprOp::divide: {
      const bool additive = p == 1;
      const char* sym = n.op == ExprOp::add        ? " + "
                        : n.op == ExprOp::subtract ? " - "
                        : n.op == ExprOp::multiply ? "*"
                                                   : "/";
      print_child(*n.lhs, precedence(*n.lhs) < (additive ? 1 : p), os);
      os << sym;
      print_child(*n.rhs, precedence(*n.rhs) <= p, os);
      return;
    }
    case ExprOp::power:
      print_child(*n.lhs, precedence(*n.lhs) <= p, os);
      os << '^';
      print_child(*n.rhs, precedence(*n.rhs) < 3, os);
      return;
    default:
      os << function_name(n.op) << '(';
      print(*n.lhs, os);
      os << ')';
      return;
  }
}

void print_sexpr(const ExprNode& n, std::ostream& os) {
  switch (n.op) {
    case ExprOp::number: os << format_number(n.value); return;
    case ExprOp::coordinate: os << n.name; return;
    case ExprOp::negate: os << "(neg "; break;
    case ExprOp::add: os << "(+ "; break;
    case ExprOp::subtract: os << "(- "; break;
    case ExprOp::multiply: os << "(* "; break;
    case ExprOp::divide: os << "(/ "; break;
    case ExprOp::power: os << "(^ "; break;
    default: os << '(' << function_name(n.op) << ' '; break;
  }
  print_sexpr(*n.lhs, os);
  if (n.rhs) {
    os << ' ';
    print_sexpr(*n.rhs, os);
  }
  os << ')';
}

}  // namespace

Expr::Expr() : root_(make_number(0.0)) {}

Expr Expr::constant(double v) { return Expr(make_number(v)); }

Expr Expr::coordinate(int index, std::string name) {
  auto n = std::make_shared<ExprNode>();
  n->op = ExprOp::coordinate;
  n->index = index;
  n->name = std::move(name);
  return Expr(n);
}

double Expr::eval(std::span<const double> coords) const {
  const double v = eval_node(*root_, coords);
  if (!std::isfinite(v)) throw DomainError("expression evaluated to a non-finite value");
  return v;
}

std::string Expr::to_string() const {
  std::ostringstream os;
  print(*root_, os);
  return os.str();
}

std::string Expr::to_sexpr() const {
  std::ostringstream os;
  print_sexpr(*root_, os);
  return os.str();
}

bool Expr::depends_on_coordinates() const { return node_depends(*root_); }

bool Expr::is_zero_constant() const {
  return root_->op == ExprOp::number && root_->value == 0.0;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr(make_node(ExprOp::add, a.root_, b.root_)); }
Expr operator-(const Expr& a, const Expr& b) {
  return Expr(make_node(ExprOp::subtract, a.root_, b.root_));
}
Expr operator*(const Expr& a, const Expr& b) {
  return Expr(make_node(ExprOp::multiply, a.root_, b.root_));
}
Expr operator/(const Expr& a, const Expr& b) { return Expr(make_node(ExprOp::divide, a.root_, b.root_)); }
Expr operator-(const Expr& a) { return Expr(make_node(ExprOp::negate, a.root_)); }
Expr exp(const Expr& a) { return Expr(make_node(ExprOp::exp, a.root_)); }

// Recursive descent over
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | identifier | function '(' expr ')' | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view src, std::span<const std::string> coords) : src_(src), coords_(coords) {}

  Expr run() {
    skip_space();
    if (pos_ >= src_.size()) throw SyntaxError(pos_, {"expression"}, "");
    NodePtr e = expr();
    skip_space();
    if (pos_ < src_.size()) throw SyntaxError(pos_, {"operator", "end of input"}, token_at(pos_));
    return Expr(e);
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string token_at(std::size_t at) const {
    if (at >= src_.size()) return "";
    std::size_t end = at + 1;
    auto ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; };
    if (ident(src_[at]))
      while (end < src_.size() && ident(src_[end])) ++end;
    return std::string(src_.substr(at, end - at));
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_node(ExprOp::add, lhs, term());
      } else if (accept('-')) {
        lhs = make_node(ExprOp::subtract, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_node(ExprOp::multiply, lhs, unary());
      } else if (accept('/')) {
        lhs = make_node(ExprOp::divide, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_node(ExprOp::negate, unary());
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    skip_space();
    const std::size_t at = pos_;
    if (accept('^')) {
      NodePtr exponent = unary();
      if (node_depends(*exponent))
        throw SyntaxError(at + 1, {"constant exponent"}, token_at(at + 1));
      return make_node(ExprOp::power, base, exponent);
    }
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= src_.size()) throw SyntaxError(pos_, {"number", "identifier", "'('"}, "");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!accept(')')) throw SyntaxError(pos_, {"')'"}, token_at(pos_));
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw SyntaxError(pos_, {"number", "identifier", "'('"}, token_at(pos_));
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
      ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_)
      throw SyntaxError(start, {"number"}, std::string(src_.substr(start, pos_ - start)));
    return make_number(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string name(src_.substr(start, pos_ - start));

    static const std::pair<const char*, ExprOp> functions[] = {
        {"exp", ExprOp::exp}, {"ln", ExprOp::ln},     {"sin", ExprOp::sin},
        {"cos", ExprOp::cos}, {"sqrt", ExprOp::sqrt}, {"abs", ExprOp::abs},
    };
    for (const auto& [fname, op] : functions) {
      if (name == fname) {
        if (!accept('(')) throw SyntaxError(pos_, {"'('"}, token_at(pos_));
        NodePtr arg = expr();
        if (!accept(')')) throw SyntaxError(pos_, {"')'"}, token_at(pos_));
        return make_node(op, arg);
      }
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (coords_[i] == name) {
        auto n = std::make_shared<ExprNode>();
        n->op = ExprOp::coordinate;
        n->index = static_cast<int>(i);
        n->name = name;
        return n;
      }
    }
    throw UnknownIdentifier(name, start);
  }

  std::string_view src_;
  std::span<const std::string> coords_;
  std::size_t pos_ = 0;
};

Expr parse_expr(std::string_view source, std::span<const std::string> coords) {
  return Parser(source, coords).run();
}

}  // namespace lcak

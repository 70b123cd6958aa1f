#include "lcak/errors.hpp"

#include <sstream>

namespace lcak {

namespace {

std::string syntax_message(std::size_t position, const std::vector<std::string>& expected,
                           const std::string& found) {
  std::ostringstream os;
  os << "syntax error at position " << position << ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) os << (i + 1 == expected.size() ? " or " : ", ");
    os << expected[i];
  }
  os << ", found " << (found.empty() ? "end of input" : "'" + found + "'");
  return os.str();
}

}  // namespace

SyntaxError::SyntaxError(std::size_t position, std::vector<std::string> expected,
                         const std::string& found)
    : Error(syntax_message(position, expected, found)),
      position_(position),
      expected_(std::move(expected)) {}

UnknownIdentifier::UnknownIdentifier(std::string name, std::size_t position)
    : Error("unknown identifier '" + name + "' at position " + std::to_string(position)),
      name_(std::move(name)),
      position_(position) {}

NotLCaK::NotLCaK(double relative_residual)
    : Error("dOmega is not in the image of omega -> omega ^ Omega (relative residual " +
            std::to_string(relative_residual) + ")"),
      residual_(relative_residual) {}

DegenerateLeeField::DegenerateLeeField(double norm_squared)
    : Error("Lee vector field is degenerate (|B|^2 = " + std::to_string(norm_squared) + ")"),
      norm2_(norm_squared) {}

MissingConformalExponent::MissingConformalExponent()
    : Error("manifold has no conformal exponent f; add a [conformal] section") {}

NotInL1::NotInL1(double residual)
    : Error("curvature does not satisfy identity (1) at this point (residual " +
            std::to_string(residual) + ")"),
      residual_(residual) {}

DefinitionError::DefinitionError(int line, const std::string& message)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

}  // namespace lcak

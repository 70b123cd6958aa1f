#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcak {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::vector<std::string> expected, const std::string& found);

  std::size_t position() const { return position_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(std::string name, std::size_t position);

  const std::string& name() const { return name_; }
  std::size_t position() const { return position_; }

 private:
  std::string name_;
  std::size_t position_;
};

/// Expression evaluated outside its real domain (ln of non-positive, x/0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A finite-difference stencil left the chart domain.
class StencilOutOfDomain : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class SingularMetric : public Error {
 public:
  using Error::Error;
};

class DegenerateForm : public Error {
 public:
  using Error::Error;
};

/// dOmega is not of the form omega ^ Omega at the point.
class NotLCaK : public Error {
 public:
  NotLCaK(double relative_residual);
  double relative_residual() const { return residual_; }

 private:
  double residual_;
};

/// The Lee field is too small for the canonical foliation to be defined.
class DegenerateLeeField : public Error {
 public:
  DegenerateLeeField(double norm_squared);
  double norm_squared() const { return norm2_; }

 private:
  double norm2_;
};

class MissingConformalExponent : public Error {
 public:
  MissingConformalExponent();
};

class NotInL1 : public Error {
 public:
  NotInL1(double residual);
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Malformed manifold definition file.
class DefinitionError : public Error {
 public:
  DefinitionError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace lcak

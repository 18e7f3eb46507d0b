#ifndef GEQNEWTON_ERRORS_HPP
#define GEQNEWTON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace geqnewton {

// Bad constructor / operation argument (nonpositive constant, size mismatch).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Evaluation outside the admissible domain, e.g. the scalar Newton map at
// t >= t*.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A convergence certificate cannot be produced; carries the violated
// hypothesis or inequality in the message.
class NoCertificateError : public std::runtime_error {
 public:
  explicit NoCertificateError(const std::string& what) : std::runtime_error(what) {}
};

// Strong regularity fails (singular Jacobian at the base point).
class RegularityError : public std::runtime_error {
 public:
  explicit RegularityError(const std::string& what) : std::runtime_error(what) {}
};

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace geqnewton

#endif  // GEQNEWTON_ERRORS_HPP

#pragma once

#include <stdexcept>
#include <string>

namespace tvscm {

/// File or stream failure (missing file, bad magic, truncated payload, ...).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical contract violation (residual imaginary mass, diverged loss, ...).
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tvscm

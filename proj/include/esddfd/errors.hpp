#pragma once

#include <stdexcept>
#include <string>

namespace esddfd {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Gamma function evaluated at a non-positive integer.
class pole_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Result exceeds the double range.
class overflow_error : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An iterative evaluation stopped before reaching its accuracy target.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A denominator function vanished or a linear system is singular.
class degenerate_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace esddfd

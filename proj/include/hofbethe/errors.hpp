#pragma once

#include <stdexcept>
#include <string>

namespace hofbethe {

/// Base of every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// N even, N < 3, or gcd(P, N) != 1.
class invalid_context : public error {
 public:
  using error::error;
};

/// Operands built over different N (or incompatible L).
class tag_mismatch : public error {
 public:
  using error::error;
};

/// Argument outside the domain of a formula (negative Pochhammer order, zero
/// Hamiltonian coupling, ...).
class domain_error : public error {
 public:
  using error::error;
};

/// A rational formula was evaluated on its pole locus.
class pole_error : public error {
 public:
  explicit pole_error(const std::string& what, int site = -1)
      : error(what), site_(site) {}
  /// Offending site index, or -1 when the pole is not attached to a site.
  int site() const noexcept { return site_; }

 private:
  int site_;
};

/// Parameters landed on a non-generic set: near-coincident eigenvalues, a
/// null space of unexpected dimension, a vanishing closed-form denominator.
class genericity_failure : public error {
 public:
  using error::error;
};

/// A closed-form denominator vanished at a root-of-unity coincidence.
class degenerate_denominator : public genericity_failure {
 public:
  using genericity_failure::genericity_failure;
};

/// Wrong number of inputs (roots, sample points, ...).
class arity_error : public error {
 public:
  using error::error;
};

/// Curve data that fails its defining equations or degenerates.
class curve_error : public error {
 public:
  using error::error;
};

/// Rejected run configuration.
class config_error : public error {
 public:
  using error::error;
};

}  // namespace hofbethe

#pragma once

#include <boost/multiprecision/float128.hpp>

#include "mfzero/errors.hpp"

namespace mfzero {

/// Quad precision (113-bit mantissa, ~34 significant digits).
using quad = boost::multiprecision::float128;

/// Working precision of intermediate arithmetic.  Passed explicitly to every
/// evaluator; nothing reads an ambient precision setting.
struct Precision {
  int working_digits = 30;
  double target_abs_tol = 1e-12;

  void validate() const {
    if (working_digits < 15) throw DomainError("working_digits must be >= 15");
    if (working_digits > 33)
      throw DomainError("working_digits above 33 is not supported (quad precision limit)");
    if (!(target_abs_tol > 0)) throw DomainError("target_abs_tol must be positive");
  }

  /// Digits <= 15 run in double, anything up to 33 in quad.
  bool uses_quad() const { return working_digits > 15; }
};

}  // namespace mfzero

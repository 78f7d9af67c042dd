#pragma once

#include <cstdint>
#include <limits>

#include "mfzero/lfunction.hpp"
#include "mfzero/newform_data.hpp"
#include "mfzero/precision.hpp"
#include "mfzero/test_function.hpp"

namespace mfzero {

struct SideValue {
  double value = 0;
  double error = 0;  // truncation tail or quadrature error bound
};

struct ExplicitFormulaOptions {
  Precision precision;
  /// Largest sieve bound allowed for the prime side.
  std::uint64_t sieve_limit = 100'000'000;
  /// Tail bounds above this raise BudgetError.
  double tail_budget = std::numeric_limits<double>::infinity();
  /// The three sides may be computed concurrently.
  unsigned threads = 1;
};

/// sum over stored ordinates of mult (phi(t) + phi(-t)) for t > 0 and mult phi(0)
/// at t = 0, plus the envelope tail int_{t_max}^inf 2 phi(t) rho(t) dt with
/// rho(t) = log(sqrt(N) (t + k/2) / 2 pi) / pi + 1.
/// Requires zeros.complete.
SideValue zero_side(const ZeroList& zeros, const TestFunction& tf, std::uint64_t level,
                    int weight, const ExplicitFormulaOptions& options = {});

/// -sum_{p^m <= Y} b(p^m) (F(m log p) + F(-m log p)) log p / p^{m/2}, Y the
/// smaller of e^{support_cut} and the number of stored coefficients.  The
/// error is a bound for all p^m > Y.
SideValue prime_side(const NewformData& form, const TestFunction& tf,
                     const ExplicitFormulaOptions& options = {});

/// Bound for the prime powers p^m > Y: with |b| <= 2 and psi(x) <= 1.04 x,
/// 4.16 (sqrt(Y) sup_{|x| >= log Y} |F| + int_{log Y}^inf |F(y)| e^{y/2} dy).
double prime_tail_bound(const TestFunction& tf, double Y);

/// F(0) (log N - 2 log 2 pi) + (1/pi) int phi_even(t) Re psi(k/2 + it) dt.
SideValue arch_side(std::uint64_t level, int weight, const TestFunction& tf,
                    const ExplicitFormulaOptions& options = {});

struct ExplicitFormulaReport {
  double zero_side = 0;
  double prime_side = 0;
  double arch_side = 0;
  double zero_tail = 0;
  double prime_tail = 0;
  double quad_error = 0;
  double residual = 0;  // |zero - prime - arch|
  bool pass = false;    // residual <= zero_tail + prime_tail + quad_error + 1e-6
};

inline constexpr double kResidualSlack = 1e-6;

ExplicitFormulaReport verify(const NewformData& form, const TestFunction& tf,
                             const ZeroList& zeros, const ExplicitFormulaOptions& options = {});

}  // namespace mfzero

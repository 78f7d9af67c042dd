#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "mfzero/newform_data.hpp"
#include "mfzero/precision.hpp"

namespace mfzero {

/// gamma_f(s) = c_k (2 pi)^{-s} Gamma(s + (k-1)/2), c_k = 2^{(3-k)/2} sqrt(pi).
struct GammaFactor {
  int weight = 12;

  double c_k() const;
  std::complex<double> operator()(std::complex<double> s) const;
  /// pi^{-s} Gamma((s + (k-1)/2)/2) Gamma((s + (k+1)/2)/2); equal by duplication.
  std::complex<double> two_gamma_form(std::complex<double> s) const;
};

std::complex<double> gamma_factor(int weight, std::complex<double> s);

struct EngineOptions {
  Precision precision;
  /// Scales the automatic AFE length (2.0 doubles M).
  double term_factor = 1.0;
  /// Use exactly this many terms when nonzero.
  std::size_t fixed_terms = 0;
};

struct LambdaValue {
  std::complex<double> value;
  double tail = 0;        // bound on the dropped n > terms part
  std::size_t terms = 0;  // number of coefficients used
};

struct ZValue {
  double value = 0;
  double discarded = 0;  // the component that must vanish (Im for w=+1, Re for w=-1)
  double tail = 0;
};

/// Split point of the realness-checked evaluation.  Away from 1 the two AFE
/// sums no longer mirror each other, so a wrong sign or a truncation problem
/// shows up as a nonzero discarded component.
inline constexpr double kRealnessSplit = 1.125;

/// z_value refuses t where the AFE rounding floor exceeds this fraction of
/// the typical size of Lambda(1/2 + it).
inline constexpr double kPrecisionMargin = 1e-8;

/// Completed L-function Lambda(s) = N^{s/2} gamma_f(s) L_f(s) of one form,
/// evaluated by the incomplete-gamma approximate functional equation
///
///   Lambda(s) = c_k sum a_n [ X_n^{-s} G(s+u, X_n A) + w X_n^{s-1} G(1-s+u, X_n / A) ]
///
/// with X_n = 2 pi n / sqrt(N), u = (k-1)/2, G the upper incomplete gamma and
/// A > 0 the split point (A = 1 is the balanced split).  Immutable and safe to
/// share between threads.
class LFunction {
 public:
  /// `sign` overrides form.sign; one of them must be known.
  LFunction(const NewformData& form, Sign sign, EngineOptions options = {});
  explicit LFunction(const NewformData& form, EngineOptions options = {});

  LambdaValue lambda(std::complex<double> s, double split = 1.0) const;

  /// Hardy-style real rotation: Lambda(1/2+it) for w = +1, Lambda(1/2+it)/i
  /// for w = -1.  Throws ConsistencyError when the discarded component exceeds
  /// max(tail, 1e-9 (1 + |Z|)), or when cancellation has eaten the working
  /// precision (see kPrecisionMargin).
  ZValue z_value(double t) const;
  double z(double t) const { return z_value(t).value; }

  /// theta(t) = Im log gamma_f(1/2 + it) + (t/2) log N, theta(0) = 0.
  double theta(double t) const;
  double theta_derivative(double t) const;

  /// AFE length needed at height |Im s| (before term_factor).
  std::size_t required_terms(double abs_im_s, double split = 1.0) const;

  Sign sign() const { return sign_; }
  std::uint64_t level() const { return level_; }
  int weight() const { return weight_; }
  const EngineOptions& options() const { return options_; }

  struct Sums;  // Lambda under both root-number hypotheses
  Sums sums(std::complex<double> s, double split) const;

 private:
  struct Evaluator;
  std::shared_ptr<const Evaluator> eval_;
  Sign sign_;
  std::uint64_t level_;
  int weight_;
  EngineOptions options_;
};

// With F = c_k sum a_n X_n^{-s} G(s+u, X_n A) and S = c_k sum a_n X_n^{s-1} G(1-s+u, X_n / A),
// combined in working precision before rounding (the two nearly cancel high
// on the critical line).
struct LFunction::Sums {
  std::complex<double> plus;   // F + S
  std::complex<double> minus;  // F - S
  double tail = 0;
  double noise = 0;  // rounding floor: eps * c_k * sum of |terms|
  std::size_t terms = 0;
};

std::complex<double> lambda_value(const NewformData& form, std::complex<double> s,
                                  const EngineOptions& options = {});
double z_function(const NewformData& form, double t, const EngineOptions& options = {});
double phase_theta(std::uint64_t level, int weight, double t);
double phase_theta_derivative(std::uint64_t level, int weight, double t);

struct SignDetection {
  Sign sign = Sign::unknown;
  double residual_plus = 0;
  double residual_minus = 0;
};

/// Picks w from the realness residual of Z at t in {0.5, 1.0, 1.7, 2.3};
/// ConsistencyError when the two hypotheses differ by less than 10^3.
SignDetection detect_sign(const NewformData& form, const EngineOptions& options = {});

// --- zeros ---------------------------------------------------------------

struct Zero {
  double t = 0;
  int multiplicity = 1;
};

/// Critical-line zero ordinates t >= 0, strictly increasing.
struct ZeroList {
  std::vector<Zero> zeros;
  double t_max = 0;
  double count_estimate = 0;  // see count_estimate()
  bool complete = false;
  std::string diagnostic;     // set when the scan stopped early

  /// Entries counted with multiplicity (t = 0 counted once per multiplicity).
  int found() const;
};

struct ZeroSearchOptions {
  double max_step = 0.05;
  /// Multiplies the scan step h(t) (0.5 halves it).
  double step_scale = 1.0;
  double tolerance = 1e-9;
  unsigned threads = 1;
};

/// Smooth part of the zero count on [0, t_max] with multiplicity:
/// theta(t_max)/pi for w = +1 and theta(t_max)/pi + 1/2 for w = -1 (the
/// central zero is listed once).  The true count differs by S(t_max), which
/// oscillates around 0 and at these heights stays within about +-2.
double count_estimate(const LFunction& lf, double t_max);

/// Scan step h(t) = min(0.05, pi / (4 max(1, theta'(t)))).
double scan_step(const LFunction& lf, double t, const ZeroSearchOptions& options = {});

/// Length of the window over which find_zeros averages N(t) - count_estimate(t):
/// eight mean zero spacings, at least 5, at most t_max.
double turing_window(const LFunction& lf, double t_max);

/// Sign-change zeros of Z on [0, t_max] refined by bisection.  Evaluation
/// failures end the scan early with complete = false.  Otherwise the list is
/// complete when N(t) - count_estimate(t) averages below 1 in absolute value
/// over the last turing_window(t_max); a missed pair of sign changes shifts
/// that average by 2.  The result does not depend on `threads`.
ZeroList find_zeros(const LFunction& lf, double t_max, const ZeroSearchOptions& options = {});

}  // namespace mfzero

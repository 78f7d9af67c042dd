#include "mfzero/explicit_formula.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include "mfzero/errors.hpp"
#include "mfzero/primes.hpp"
#include "mfzero/quadrature.hpp"
#include "mfzero/special_fn.hpp"

namespace mfzero {

namespace {

constexpr double kPi = std::numbers::pi;

// Neumaier-compensated running sum.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

void check_budget(double tail, const ExplicitFormulaOptions& options, const char* side) {
  if (tail > options.tail_budget) {
    std::ostringstream msg;
    msg << side << " tail bound " << tail << " exceeds the budget " << options.tail_budget;
    throw BudgetError(msg.str());
  }
}

double zero_density_envelope(std::uint64_t level, int weight, double t) {
  const double x = std::sqrt(static_cast<double>(level)) * (t + weight / 2.0) / (2 * kPi);
  return std::log(x) / kPi + 1;
}

}  // namespace

SideValue zero_side(const ZeroList& zeros, const TestFunction& tf, std::uint64_t level,
                    int weight, const ExplicitFormulaOptions& options) {
  if (!zeros.complete) throw ConsistencyError("zero list is incomplete");
  Accumulator sum;
  for (const Zero& z : zeros.zeros) {
    if (z.t == 0)
      sum.add(z.multiplicity * tf.phi(0));
    else
      sum.add(z.multiplicity * (tf.phi(z.t) + tf.phi(-z.t)));
  }

  const auto density = [&](double t) {
    return 2 * tf.phi_envelope(t) * zero_density_envelope(level, weight, t);
  };
  const double scale = density(zeros.t_max);
  double tail = 0;
  if (scale > 0) {
    const double tol = std::max(1e-9 * scale, 1e-300);
    const QuadResult r =
        integrate_to_infinity(density, zeros.t_max, [&](double t) { return 2 * density(t); }, tol);
    tail = r.value + r.error;
  }
  check_budget(tail, options, "zero side");
  return {sum.value(), tail};
}

double prime_tail_bound(const TestFunction& tf, double Y) {
  const double x = std::log(Y);
  return 4.16 * (std::sqrt(Y) * tf.F_envelope(x) + tf.weighted_F_tail(x));
}

SideValue prime_side(const NewformData& form, const TestFunction& tf,
                     const ExplicitFormulaOptions& options) {
  const double cut = tf.support_cut();
  const double reach = cut > 700 ? std::numeric_limits<double>::infinity() : std::exp(cut);
  const double stored = static_cast<double>(form.terms());
  const auto Y = static_cast<std::uint64_t>(std::floor(std::min(reach, stored)));
  if (Y > options.sieve_limit) {
    std::ostringstream msg;
    msg << "prime side needs a sieve to " << Y << ", above the limit " << options.sieve_limit;
    throw BudgetError(msg.str());
  }

  const double half_weight = (form.weight - 1) / 2.0;
  Accumulator sum;
  for (std::uint64_t p : primes_up_to(Y)) {
    const double pd = static_cast<double>(p);
    const double a_p = to_real<double>(form.c(p)) / std::pow(pd, half_weight);
    const bool ramified = form.level % p == 0;
    const double log_p = std::log(pd);
    std::uint64_t pm = p;
    for (int m = 1;; ++m) {
      const double x = m * log_p;
      const double b = chebyshev_b(a_p, m, ramified);
      sum.add(b * (tf.F(x) + tf.F(-x)) * log_p / std::pow(pd, m / 2.0));
      if (pm > Y / p) break;
      pm *= p;
    }
  }
  const double tail = prime_tail_bound(tf, static_cast<double>(std::max<std::uint64_t>(Y, 1)));
  check_budget(tail, options, "prime side");
  return {-sum.value(), tail};
}

SideValue arch_side(std::uint64_t level, int weight, const TestFunction& tf,
                    const ExplicitFormulaOptions& options) {
  if (level < 1) throw DomainError("level must be >= 1");
  if (weight < 2 || weight % 2 != 0) throw DomainError("weight must be even and >= 2");
  options.precision.validate();

  const double k2 = weight / 2.0;
  const double T = tf.phi_cut();
  const double tol = options.precision.target_abs_tol;

  const auto phi_even = [&](double t) { return 0.5 * (tf.phi(t) + tf.phi(-t)); };
  const auto re_part = [&](double t) {
    return phi_even(t) * special::digamma<double>({k2, t}).real();
  };
  const auto im_part = [&](double t) {
    return phi_even(t) * special::digamma<double>({k2, t}).imag();
  };

  // Even integrand: (1/pi) int_{-T}^{T} = (2/pi) int_0^T.
  const QuadResult body = adaptive_quad(re_part, 0, T, tol * kPi / 2);
  const QuadResult odd = adaptive_quad(im_part, -T, T, tol * kPi);
  if (std::abs(odd.value) > tol * kPi + odd.error) {
    std::ostringstream msg;
    msg << "imaginary part of the archimedean integral does not cancel: " << odd.value;
    throw ConsistencyError(msg.str());
  }

  // |Re psi(k/2 + it)| <= log(k/2 + |t|) + 1 beyond the cut.
  const auto beyond = [&](double t) { return tf.phi_envelope(t) * (std::log(k2 + t) + 1); };
  double truncation = 0;
  if (beyond(T) > 0) {
    const QuadResult r = integrate_to_infinity(
        beyond, T, [&](double t) { return 2 * beyond(t); }, std::max(1e-3 * beyond(T), 1e-300));
    truncation = r.value + r.error;
  }

  const double constant =
      tf.F0() * (std::log(static_cast<double>(level)) - 2 * std::log(2 * kPi));
  return {constant + 2 / kPi * body.value, 2 / kPi * (body.error + truncation)};
}

ExplicitFormulaReport verify(const NewformData& form, const TestFunction& tf,
                             const ZeroList& zeros, const ExplicitFormulaOptions& options) {
  const auto zero_job = [&] { return zero_side(zeros, tf, form.level, form.weight, options); };
  const auto prime_job = [&] { return prime_side(form, tf, options); };
  const auto arch_job = [&] { return arch_side(form.level, form.weight, tf, options); };

  SideValue z, p, a;
  if (options.threads > 1) {
    auto pf = std::async(std::launch::async, prime_job);
    auto af = std::async(std::launch::async, arch_job);
    z = zero_job();
    p = pf.get();
    a = af.get();
  } else {
    z = zero_job();
    p = prime_job();
    a = arch_job();
  }

  ExplicitFormulaReport r;
  r.zero_side = z.value;
  r.prime_side = p.value;
  r.arch_side = a.value;
  r.zero_tail = z.error;
  r.prime_tail = p.error;
  r.quad_error = a.error;
  r.residual = std::abs(z.value - p.value - a.value);
  r.pass = r.residual <= r.zero_tail + r.prime_tail + r.quad_error + kResidualSlack;
  return r;
}

}  // namespace mfzero

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "mfzero/errors.hpp"
#include "mfzero/precision.hpp"

namespace mfzero::special {

// Complex log-gamma, digamma and the upper incomplete gamma function.
//
// Real is double or quad.  Log-gamma and digamma shift s upward with the
// recurrence until Re s clears a threshold, then sum the Stirling series; the
// threshold and the number of Bernoulli terms grow with the precision so the
// truncation error stays below one ulp:
//
//   double: Re s >= 10, B_2..B_20  (first omitted term < 1e-20)
//   quad:   Re s >= 20, B_2..B_34  (first omitted term < 4e-36)

namespace detail {

// B_{2m} as exact fractions, m = 1..17
inline constexpr long long kBernoulliNum[] = {
    1,         -1,          1,        -1,          5,
    -691,      7,           -3617,    43867,       -174611,
    854513,    -236364091,  8553103,  -23749461029LL, 8615841276005LL,
    -7709321041217LL, 2577687858367LL};
inline constexpr long long kBernoulliDen[] = {
    6, 30, 42, 30, 66, 2730, 6, 510, 798, 330, 138, 2730, 6, 870, 14322, 510, 6};

template <class Real>
struct StirlingPlan {
  static constexpr bool is_quad = std::numeric_limits<Real>::digits > 64;
  static constexpr int threshold = is_quad ? 20 : 10;
  static constexpr int terms = is_quad ? 17 : 10;
};

template <class Real>
Real bernoulli(int m) {
  return Real(kBernoulliNum[m - 1]) / Real(kBernoulliDen[m - 1]);
}

template <class Real>
void check_pole(const std::complex<Real>& s, const char* fn) {
  using std::floor;
  if (s.imag() == 0 && s.real() <= 0 && floor(s.real()) == s.real()) {
    std::ostringstream msg;
    msg << fn << ": pole at s = " << static_cast<double>(s.real());
    throw DomainError(msg.str());
  }
}

template <class Real>
Real pi() {
  using std::acos;
  return acos(Real(-1));
}

template <class Real>
[[noreturn]] void throw_nonconvergence(const char* branch, const std::complex<Real>& a, Real x) {
  std::ostringstream msg;
  msg << "incomplete gamma " << branch << " did not converge for a = ("
      << static_cast<double>(a.real()) << ", " << static_cast<double>(a.imag())
      << "), x = " << static_cast<double>(x);
  throw ConvergenceError(msg.str());
}

}  // namespace detail

/// Principal branch of log Gamma(s).
template <class Real>
std::complex<Real> log_gamma(std::complex<Real> s) {
  using C = std::complex<Real>;
  using Plan = detail::StirlingPlan<Real>;
  using std::log;
  detail::check_pole(s, "log_gamma");

  C shift(0, 0);
  while (s.real() < Plan::threshold) {
    shift += std::log(s);
    s += Real(1);
  }
  const C inv = Real(1) / s;
  const C inv2 = inv * inv;
  C series(0, 0);
  C power = inv;
  for (int m = 1; m <= Plan::terms; ++m) {
    series += detail::bernoulli<Real>(m) / Real((2 * m) * (2 * m - 1)) * power;
    power *= inv2;
  }
  const Real half_log_2pi = log(2 * detail::pi<Real>()) / 2;
  return (s - Real(0.5)) * std::log(s) - s + half_log_2pi + series - shift;
}

/// psi(s) = Gamma'(s) / Gamma(s).
template <class Real>
std::complex<Real> digamma(std::complex<Real> s) {
  using C = std::complex<Real>;
  using Plan = detail::StirlingPlan<Real>;
  detail::check_pole(s, "digamma");

  C shift(0, 0);
  while (s.real() < Plan::threshold) {
    shift += Real(1) / s;
    s += Real(1);
  }
  const C inv = Real(1) / s;
  const C inv2 = inv * inv;
  C series(0, 0);
  C power = inv2;
  for (int m = 1; m <= Plan::terms; ++m) {
    series += detail::bernoulli<Real>(m) / Real(2 * m) * power;
    power *= inv2;
  }
  return std::log(s) - inv / Real(2) - series - shift;
}

/// Gamma(a, x) = int_x^inf e^{-u} u^{a-1} du for x > 0.
///
/// Continued fraction (modified Lentz) when x >= |a| + 1, otherwise
/// Gamma(a) minus the power series of the lower function.  Near a pole of
/// Gamma(a) the continued fraction is used on the whole range.
template <class Real>
std::complex<Real> upper_incomplete_gamma(const std::complex<Real>& a, Real x,
                                          int max_iterations = 200000) {
  using C = std::complex<Real>;
  using std::abs;
  using std::log;
  using std::round;
  if (!(x > 0)) throw DomainError("upper_incomplete_gamma needs x > 0");

  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real tiny = std::numeric_limits<Real>::min() / eps;
  const C prefactor = std::exp(a * Real(log(x)) - x);

  const bool near_pole = a.real() < Real(0.5) && abs(a.imag()) < Real(1e-6) &&
                         abs(a.real() - round(a.real())) < Real(1e-6);

  if (x >= std::abs(a) + 1 || near_pole) {
    C b = x + Real(1) - a;
    C c = Real(1) / tiny;
    C d = Real(1) / b;
    C h = d;
    for (int i = 1; i <= max_iterations; ++i) {
      const C an = -Real(i) * (Real(i) - a);
      b += Real(2);
      d = an * d + b;
      if (std::abs(d) < tiny) d = tiny;
      c = b + an / c;
      if (std::abs(c) < tiny) c = tiny;
      d = Real(1) / d;
      const C del = d * c;
      h *= del;
      if (std::abs(del - Real(1)) <= eps) return h * prefactor;
    }
    detail::throw_nonconvergence("continued fraction", a, x);
  }

  C ap = a;
  C del = Real(1) / a;
  C sum = del;
  for (int i = 1; i <= max_iterations; ++i) {
    ap += Real(1);
    del *= x / ap;
    sum += del;
    if (std::abs(del) <= std::abs(sum) * eps) {
      return std::exp(log_gamma(a)) - sum * prefactor;
    }
  }
  detail::throw_nonconvergence("series", a, x);
}

}  // namespace mfzero::special

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mfzero/errors.hpp"
#include "mfzero/qseries.hpp"

namespace mfzero {

/// Root number w of the functional equation Lambda(s) = w Lambda(1 - s).
enum class Sign : int { minus = -1, unknown = 0, plus = 1 };

inline int to_int(Sign s) { return static_cast<int>(s); }

/// A primitive form given by its arithmetically normalized coefficients
/// c_1..c_M (exact integers, c_1 = 1).  Immutable once validated.
struct NewformData {
  std::string label;
  std::uint64_t level = 1;
  int weight = 12;
  Sign sign = Sign::unknown;
  std::vector<BigInt> coeffs;  // coeffs[n - 1] = c_n

  std::size_t terms() const { return coeffs.size(); }
  const BigInt& c(std::size_t n) const { return coeffs.at(n - 1); }

  bool operator==(const NewformData&) const = default;
};

/// Checks c_1 = 1, multiplicativity, the Hecke recursion at prime powers and
/// the Ramanujan-Petersson bounds at primes.  Throws InvariantError naming the
/// first offending n, DomainError for bad level/weight.
void validate(const NewformData& form);

/// Delta = q prod (1 - q^n)^24 with M coefficients.
NewformData gen_delta(std::size_t terms);

/// The level-one eigenform of weight k in {12, 16, 18, 20, 22, 26}.
NewformData gen_level1_eigenform(int weight, std::size_t terms);

/// Weierstrass coefficients [a1, a2, a3, a4, a6].
using AInvariants = std::array<long long, 5>;

struct EllipticOptions {
  // Upper bound on sum of p over the primes that get point-counted.
  double max_work = 5e10;
};

/// Weight-2 newform attached to an elliptic curve of conductor `level`, with
/// c_p = p + 1 - #E(F_p) by point counting (singular point included at p | N).
/// Sign is left unknown.
NewformData gen_elliptic(const AInvariants& a, std::uint64_t level, std::size_t terms,
                         const EllipticOptions& options = {});

/// #E(F_p) including the point at infinity and any singular point.
std::uint64_t count_points(const AInvariants& a, std::uint64_t p);

/// Number of singular points of the reduction mod p (0 or 1 for a valid model).
int count_singular_points(const AInvariants& a, std::uint64_t p);

/// Fill c_1..c_M from c_p at primes p <= M through the Euler factors.
/// Throws DomainError if some prime is missing.
std::vector<BigInt> extend_multiplicatively(const std::map<std::uint64_t, BigInt>& prime_coeffs,
                                            std::uint64_t level, int weight,
                                            std::size_t terms);

/// Analytic normalization a_n = c_n n^{-(k-1)/2}.
template <class Real>
struct NormalizedCoefficients {
  int weight = 0;
  std::vector<Real> an;  // an[n - 1] = a_n
};

/// Nearest Real to an exact integer (good to the Real's precision).
template <class Real>
Real to_real(const BigInt& v);

template <class Real>
NormalizedCoefficients<Real> normalize(const NewformData& form, std::size_t count = 0);

/// b(p^m): alpha^m + conj(alpha)^m at good primes (Chebyshev recursion),
/// a_p^m at bad ones.  Throws DomainError outside the Ramanujan-Petersson range.
double chebyshev_b(double a_p, int m, bool ramified);

struct Conductor {
  double q = 0;
  double log_q = 0;
};

/// q_f = N ((k - 1)/2 + 3)((k + 1)/2 + 3).
Conductor analytic_conductor(std::uint64_t level, int weight);

// ---------------------------------------------------------------------------

template <class Real>
Real to_real(const BigInt& v) {
  using std::ldexp;
  if (v == 0) return Real(0);
  const bool negative = v < 0;
  BigInt mag = negative ? BigInt(-v) : v;
  const unsigned bits = boost::multiprecision::msb(mag) + 1;
  int shift = 0;
  if (bits > 120) {
    shift = static_cast<int>(bits - 120);
    mag >>= shift;
  }
  const auto lo = static_cast<std::uint64_t>(mag & BigInt(~std::uint64_t{0}));
  const auto hi = static_cast<std::uint64_t>(mag >> 64);
  Real r = Real(hi);
  r = ldexp(r, 64) + Real(lo);
  r = ldexp(r, shift);
  return negative ? -r : r;
}

template <class Real>
NormalizedCoefficients<Real> normalize(const NewformData& form, std::size_t count) {
  using std::pow;
  if (count == 0 || count > form.terms()) count = form.terms();
  NormalizedCoefficients<Real> out;
  out.weight = form.weight;
  out.an.resize(count);
  const Real half_weight = Real(form.weight - 1) / 2;
  for (std::size_t n = 1; n <= count; ++n)
    out.an[n - 1] = to_real<Real>(form.coeffs[n - 1]) / pow(Real(n), half_weight);
  return out;
}

}  // namespace mfzero

#include <cstdint>
#include <sstream>

#include "mfzero/newform_data.hpp"
#include "mfzero/primes.hpp"

namespace mfzero {

namespace {

using i64 = long long;
using u64 = std::uint64_t;

u64 reduce(i64 v, u64 p) {
  const i64 r = v % static_cast<i64>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(p) : r);
}

BigInt discriminant(const AInvariants& a) {
  const BigInt a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
  const BigInt b2 = a1 * a1 + 4 * a2;
  const BigInt b4 = 2 * a4 + a1 * a3;
  const BigInt b6 = a3 * a3 + 4 * a6;
  const BigInt b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

// F(x, y) = y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6 and its partials, mod p.
struct Reduced {
  u64 p, a1, a2, a3, a4, a6;

  Reduced(const AInvariants& a, u64 p_)
      : p(p_), a1(reduce(a[0], p_)), a2(reduce(a[1], p_)), a3(reduce(a[2], p_)),
        a4(reduce(a[3], p_)), a6(reduce(a[4], p_)) {}

  u64 f(u64 x, u64 y) const {
    const u64 lhs = (y * y + a1 * x % p * y + a3 * y) % p;
    const u64 rhs = ((x * x % p * x) + a2 * x % p * x + a4 * x + a6) % p;
    return (lhs + p - rhs) % p;
  }
  u64 fx(u64 x, u64 y) const {
    const u64 pos = a1 * y % p;
    const u64 neg = (3 * x % p * x + 2 * a2 * x + a4) % p;
    return (pos + p - neg) % p;
  }
  u64 fy(u64 x, u64 y) const { return (2 * y + a1 * x + a3) % p; }
};

}  // namespace

std::uint64_t count_points(const AInvariants& a, std::uint64_t p) {
  const Reduced e(a, p);
  if (p == 2) {
    u64 count = 1;
    for (u64 x = 0; x < 2; ++x)
      for (u64 y = 0; y < 2; ++y)
        if (e.f(x, y) == 0) ++count;
    return count;
  }
  // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
  const u64 b2 = (e.a1 * e.a1 + 4 * e.a2) % p;
  const u64 b4 = (2 * e.a4 + e.a1 * e.a3) % p;
  const u64 b6 = (e.a3 * e.a3 + 4 * e.a6) % p;
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (u64 y = 1; y <= p / 2; ++y) chi[y * y % p] = 1;
  i64 sum = 0;
  for (u64 x = 0; x < p; ++x) {
    const u64 g = (((4 * x + b2) % p * x + 2 * b4) % p * x + b6) % p;
    sum += chi[g];
  }
  return static_cast<u64>(static_cast<i64>(p) + 1 + sum);
}

int count_singular_points(const AInvariants& a, std::uint64_t p) {
  const Reduced e(a, p);
  int count = 0;
  if (p == 2) {
    for (u64 x = 0; x < 2; ++x)
      for (u64 y = 0; y < 2; ++y)
        if (e.f(x, y) == 0 && e.fx(x, y) == 0 && e.fy(x, y) == 0) ++count;
    return count;
  }
  const u64 inv2 = (p + 1) / 2;
  for (u64 x = 0; x < p; ++x) {
    // F_y = 0 pins y
    const u64 y = (p - (e.a1 * x + e.a3) % p) % p * inv2 % p;
    if (e.f(x, y) == 0 && e.fx(x, y) == 0) ++count;
  }
  return count;
}

NewformData gen_elliptic(const AInvariants& a, std::uint64_t level, std::size_t terms,
                         const EllipticOptions& options) {
  if (level < 1) throw DomainError("level must be >= 1");
  if (terms == 0) throw DomainError("need at least one coefficient");
  const BigInt disc = discriminant(a);
  if (disc == 0) throw GenerationError("singular Weierstrass model (discriminant 0)");

  const auto primes = primes_up_to(terms);
  double work = 0;
  for (u64 p : primes) work += static_cast<double>(p);
  if (work > options.max_work)
    throw GenerationError("point counting work " + std::to_string(work) +
                          " exceeds the configured bound");

  std::map<std::uint64_t, BigInt> cp;
  for (u64 p : primes) {
    const bool bad = level % p == 0;
    if (!bad) {
      if (disc % p == 0)
        throw GenerationError("inconsistent singular-point count: reduction mod " +
                              std::to_string(p) + " is singular but p does not divide N");
      cp[p] = BigInt(static_cast<i64>(p) + 1 - static_cast<i64>(count_points(a, p)));
      continue;
    }
    const int singular = count_singular_points(a, p);
    if (singular != 1)
      throw GenerationError("inconsistent singular-point count at p=" + std::to_string(p) +
                            ": found " + std::to_string(singular) + ", expected 1");
    // #smooth = #E(F_p) - 1 = p - c_p
    const i64 smooth = static_cast<i64>(count_points(a, p)) - 1;
    const i64 c = static_cast<i64>(p) - smooth;
    if (c < -1 || c > 1)
      throw GenerationError("bad-reduction trace outside {-1,0,1} at p=" + std::to_string(p));
    cp[p] = BigInt(c);
  }

  NewformData form;
  std::ostringstream label;
  label << "E" << level << "[" << a[0] << "," << a[1] << "," << a[2] << "," << a[3] << ","
        << a[4] << "]";
  form.label = label.str();
  form.level = level;
  form.weight = 2;
  form.sign = Sign::unknown;
  form.coeffs = extend_multiplicatively(cp, level, 2, terms);
  try {
    validate(form);
  } catch (const InvariantError& e) {
    throw GenerationError(std::string("elliptic coefficients failed validation: ") + e.what());
  }
  return form;
}

}  // namespace mfzero

#include "mfzero/qseries.hpp"

#include <algorithm>
#include <cmath>

#include "mfzero/errors.hpp"
#include "mfzero/primes.hpp"

namespace mfzero {
namespace detail {

namespace {

constexpr unsigned kMaxLog2Len = 20;

using u32 = std::uint32_t;
using u64 = std::uint64_t;

u32 pow_mod(u64 b, u64 e, u32 m) {
  u64 r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<u32>(r);
}

u32 primitive_root(u32 p) {
  std::vector<u64> factors;
  u64 n = p - 1;
  for (u64 q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    factors.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) factors.push_back(n);
  for (u32 g = 2;; ++g) {
    bool ok = true;
    for (u64 q : factors)
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

void ntt(std::vector<u32>& a, bool invert, const NttPrime& prime) {
  const u32 p = prime.modulus;
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<u32> w(n / 2 + 1);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    u32 wl = pow_mod(prime.root, (p - 1) / len, p);
    if (invert) wl = pow_mod(wl, p - 2, p);
    const std::size_t half = len / 2;
    w[0] = 1;
    for (std::size_t k = 1; k < half; ++k)
      w[k] = static_cast<u32>(static_cast<u64>(w[k - 1]) * wl % p);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const u32 u = a[i + k];
        const u32 v = static_cast<u32>(static_cast<u64>(a[i + k + half]) * w[k] % p);
        a[i + k] = u + v >= p ? u + v - p : u + v;
        a[i + k + half] = u >= v ? u - v : u + p - v;
      }
    }
  }
  if (invert) {
    const u64 inv_n = pow_mod(n, p - 2, p);
    for (auto& x : a) x = static_cast<u32>(x * inv_n % p);
  }
}

}  // namespace

const std::vector<NttPrime>& ntt_primes() {
  static const std::vector<NttPrime> primes = [] {
    std::vector<NttPrime> out;
    for (u64 c = (u64{1} << 11) - 1; c >= 1; --c) {
      const u64 p = (c << kMaxLog2Len) + 1;
      if (p >= (u64{1} << 31) || !is_prime_u64(p)) continue;
      out.push_back({static_cast<u32>(p), primitive_root(static_cast<u32>(p))});
    }
    return out;
  }();
  return primes;
}

std::vector<u32> multiply_truncated(const std::vector<u32>& a, const std::vector<u32>& b,
                                    std::size_t len, const NttPrime& prime) {
  const std::size_t la = std::min(a.size(), len);
  const std::size_t lb = std::min(b.size(), len);
  std::size_t n = 1;
  while (n < la + lb) n <<= 1;
  if (n > (std::size_t{1} << kMaxLog2Len))
    throw GenerationError("series product too long for the NTT primes");

  const u32 p = prime.modulus;
  std::vector<u32> fa(a.begin(), a.begin() + la), fb;
  fa.resize(n, 0);
  const bool square = &a == &b;
  ntt(fa, false, prime);
  if (square) {
    for (std::size_t i = 0; i < n; ++i)
      fa[i] = static_cast<u32>(static_cast<u64>(fa[i]) * fa[i] % p);
  } else {
    fb.assign(b.begin(), b.begin() + lb);
    fb.resize(n, 0);
    ntt(fb, false, prime);
    for (std::size_t i = 0; i < n; ++i)
      fa[i] = static_cast<u32>(static_cast<u64>(fa[i]) * fb[i] % p);
  }
  ntt(fa, true, prime);
  fa.resize(len, 0);
  return fa;
}

std::pair<int, int> eisenstein_exponents(int weight) {
  switch (weight) {
    case 12: return {0, 0};
    case 16: return {1, 0};
    case 18: return {0, 1};
    case 20: return {2, 0};
    case 22: return {1, 1};
    case 26: return {2, 1};
    default:
      throw DomainError("no one-dimensional level-1 cusp space in weight " +
                        std::to_string(weight));
  }
}

}  // namespace detail

namespace {

using detail::NttPrime;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

u32 inverse_mod(u32 a, u32 p) {
  u64 b = a % p, e = p - 2, r = 1;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<u32>(r);
}

// prod (1 - q^n) mod (q^len, p) by the pentagonal number theorem.
std::vector<u32> euler_product(std::size_t len, u32 p) {
  std::vector<u32> out(len, 0);
  out[0] = 1;
  for (u64 m = 1;; ++m) {
    const u64 g1 = m * (3 * m - 1) / 2;
    const u64 g2 = m * (3 * m + 1) / 2;
    if (g1 >= len) break;
    const u32 v = (m % 2) ? p - 1 : 1;
    out[g1] = v;
    if (g2 < len) out[g2] = v;
  }
  return out;
}

// 1 + scale * sum sigma_e(n) q^n mod (q^len, p); scale may be negative.
std::vector<u32> eisenstein(std::size_t len, int exponent, long long scale, u32 p) {
  std::vector<u64> sigma(len, 0);
  for (u64 d = 1; d < len; ++d) {
    u64 pw = 1;
    for (int i = 0; i < exponent; ++i) pw = pw * (d % p) % p;
    for (u64 n = d; n < len; n += d) sigma[n] = (sigma[n] + pw) % p;
  }
  const u64 s = static_cast<u64>(((scale % static_cast<long long>(p)) + p) % p);
  std::vector<u32> out(len);
  out[0] = 1;
  for (std::size_t n = 1; n < len; ++n) out[n] = static_cast<u32>(sigma[n] * s % p);
  return out;
}

// Residues of the weight-k eigenform, index n in [0, terms], for one prime.
std::vector<u32> eigenform_residues(int weight, std::size_t terms, const NttPrime& prime) {
  const u32 p = prime.modulus;
  using detail::multiply_truncated;
  // Delta = q * P^24 needs P^24 through q^{terms-1}.
  const auto e1 = euler_product(terms, p);
  const auto e2 = multiply_truncated(e1, e1, terms, prime);
  const auto e3 = multiply_truncated(e2, e1, terms, prime);
  const auto e6 = multiply_truncated(e3, e3, terms, prime);
  const auto e12 = multiply_truncated(e6, e6, terms, prime);
  const auto e24 = multiply_truncated(e12, e12, terms, prime);

  std::vector<u32> f(terms + 1, 0);
  for (std::size_t n = 1; n <= terms; ++n) f[n] = e24[n - 1];

  const auto [a, b] = detail::eisenstein_exponents(weight);
  if (a > 0 || b > 0) {
    std::vector<u32> eis(terms + 1, 0);
    eis[0] = 1;
    const auto e4 = eisenstein(terms + 1, 3, 240, p);
    const auto e6s = eisenstein(terms + 1, 5, -504, p);
    for (int i = 0; i < a; ++i) eis = multiply_truncated(eis, e4, terms + 1, prime);
    for (int i = 0; i < b; ++i) eis = multiply_truncated(eis, e6s, terms + 1, prime);
    f = multiply_truncated(f, eis, terms + 1, prime);
  }
  return f;
}

// Garner reconstruction into the symmetric residue system.
std::vector<BigInt> crt_lift(const std::vector<std::vector<u32>>& residues,
                             const std::vector<NttPrime>& primes, std::size_t first,
                             std::size_t count) {
  const std::size_t k = primes.size();
  // inv[i][j] = p_j^{-1} mod p_i for j < i
  std::vector<std::vector<u32>> inv(k, std::vector<u32>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j)
      inv[i][j] = inverse_mod(primes[j].modulus, primes[i].modulus);

  BigInt modulus = 1;
  for (const auto& p : primes) modulus *= p.modulus;
  const BigInt half = modulus / 2;

  std::vector<BigInt> out;
  out.reserve(count);
  std::vector<u64> v(k);
  for (std::size_t idx = first; idx < first + count; ++idx) {
    for (std::size_t i = 0; i < k; ++i) {
      const u64 pi = primes[i].modulus;
      u64 x = residues[i][idx];
      for (std::size_t j = 0; j < i; ++j) {
        x = (x + pi - v[j] % pi) % pi;
        x = x * inv[i][j] % pi;
      }
      v[i] = x;
    }
    BigInt value = v[k - 1];
    for (std::size_t i = k - 1; i-- > 0;) {
      value *= primes[i].modulus;
      value += v[i];
    }
    if (value > half) value -= modulus;
    out.push_back(std::move(value));
  }
  return out;
}

std::size_t primes_needed(int weight, std::size_t terms) {
  const auto d = divisor_counts(static_cast<std::uint32_t>(terms));
  const double max_d = *std::max_element(d.begin() + 1, d.end());
  const double bits = std::log2(max_d) +
                      0.5 * (weight - 1) * std::log2(static_cast<double>(terms)) + 2.0;
  double have = 0;
  std::size_t count = 0;
  for (const auto& p : detail::ntt_primes()) {
    have += std::log2(static_cast<double>(p.modulus));
    ++count;
    if (have > bits) return count;
  }
  throw GenerationError("not enough NTT primes for the coefficient bound");
}

}  // namespace

bool is_supported_level1_weight(int weight) {
  switch (weight) {
    case 12: case 16: case 18: case 20: case 22: case 26: return true;
    default: return false;
  }
}

std::vector<BigInt> level1_eigenform_series(int weight, std::size_t terms) {
  if (!is_supported_level1_weight(weight))
    throw DomainError("no one-dimensional level-1 cusp space in weight " +
                      std::to_string(weight));
  if (terms == 0) throw DomainError("need at least one coefficient");
  const std::size_t count = primes_needed(weight, terms);
  std::vector<NttPrime> primes(detail::ntt_primes().begin(),
                               detail::ntt_primes().begin() + count);
  std::vector<std::vector<u32>> residues;
  residues.reserve(count);
  for (const auto& p : primes) residues.push_back(eigenform_residues(weight, terms, p));
  return crt_lift(residues, primes, 1, terms);
}

std::vector<BigInt> delta_series(std::size_t terms) {
  return level1_eigenform_series(12, terms);
}

}  // namespace mfzero

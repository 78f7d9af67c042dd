#include "mfzero/primes.hpp"

#include <algorithm>
#include <cmath>

namespace mfzero {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit,
                                        std::size_t segment_bytes) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  const std::uint64_t root = isqrt(limit);

  // base primes <= sqrt(limit), plain sieve
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }

  const std::uint64_t seg = std::max<std::uint64_t>(segment_bytes, 64);
  std::vector<char> sieve(seg);
  std::vector<std::uint64_t> next(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) next[i] = base[i] * base[i];

  for (std::uint64_t low = 0; low <= limit; low += seg) {
    const std::uint64_t high = std::min(low + seg - 1, limit);
    std::fill(sieve.begin(), sieve.end(), 1);
    for (std::size_t i = 0; i < base.size(); ++i) {
      std::uint64_t j = next[i];
      for (; j <= high; j += base[i]) sieve[j - low] = 0;
      next[i] = j;
    }
    for (std::uint64_t n = std::max<std::uint64_t>(low, 2); n <= high; ++n)
      if (sieve[n - low]) out.push_back(n);
    if (high == limit) break;
  }
  return out;
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit) {
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i]) continue;
    for (std::uint64_t j = i; j <= limit; j += i)
      if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
  }
  return spf;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint32_t> divisor_counts(std::uint32_t limit) {
  std::vector<std::uint32_t> d(static_cast<std::size_t>(limit) + 1, 0);
  for (std::uint64_t i = 1; i <= limit; ++i)
    for (std::uint64_t j = i; j <= limit; j += i) ++d[j];
  return d;
}

}  // namespace mfzero

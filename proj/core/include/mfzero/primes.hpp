#pragma once

#include <cstdint>
#include <vector>

namespace mfzero {

/// All primes p <= limit, by a segmented sieve of Eratosthenes.
/// `segment_bytes` bounds the working set of each segment.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit,
                                        std::size_t segment_bytes = 1u << 16);

/// spf[n] = smallest prime factor of n for 2 <= n <= limit; spf[0] = spf[1] = 0.
std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// d(n) for 1 <= n <= limit (index 0 unused).
std::vector<std::uint32_t> divisor_counts(std::uint32_t limit);

}  // namespace mfzero

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mfzero {

using BigInt = boost::multiprecision::cpp_int;

// Exact integer q-expansions of level-one cusp forms.
//
// Series are multiplied modulo a handful of NTT-friendly primes below 2^31 and
// lifted back to Z by CRT.  The number of primes is chosen from the Deligne
// bound |c_n| <= d(n) n^{(k-1)/2} of the target eigenform, so the lift is
// exact whenever the result really is a normalized eigenform; callers
// re-validate the Hecke relations afterwards.

/// tau(1..M): out[n-1] = tau(n), coefficients of q * prod_{n>=1} (1 - q^n)^24.
std::vector<BigInt> delta_series(std::size_t terms);

/// Weights with a one-dimensional level-one cusp space.
bool is_supported_level1_weight(int weight);

/// Coefficients c_1..c_M of Delta * E4^a * E6^b with 4a + 6b = weight - 12.
/// Throws DomainError for an unsupported weight.
std::vector<BigInt> level1_eigenform_series(int weight, std::size_t terms);

namespace detail {

struct NttPrime {
  std::uint32_t modulus;
  std::uint32_t root;  // primitive root mod `modulus`
};

/// Primes c * 2^20 + 1 < 2^31, in decreasing order, with primitive roots.
const std::vector<NttPrime>& ntt_primes();

/// (a * b) mod x^len over Z/p, by number-theoretic transform.
std::vector<std::uint32_t> multiply_truncated(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b,
                                              std::size_t len, const NttPrime& p);

/// Exponents (a, b) with Delta * E4^a * E6^b the weight-k eigenform.
std::pair<int, int> eisenstein_exponents(int weight);

}  // namespace detail

}  // namespace mfzero

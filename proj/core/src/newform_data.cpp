#include "mfzero/newform_data.hpp"

#include <cmath>

#include "mfzero/primes.hpp"

namespace mfzero {

namespace {

void check_level_weight(std::uint64_t level, int weight) {
  if (level < 1) throw DomainError("level must be >= 1");
  if (weight < 2 || weight % 2 != 0) throw DomainError("weight must be even and >= 2");
}

// Shared walk over n = p^e * m: multiplicative part vs. prime-power part.
struct Factored {
  std::uint64_t p;
  int e;
  std::uint64_t pe;
  std::uint64_t rest;
};

Factored split_smallest_prime(std::uint64_t n, const std::vector<std::uint32_t>& spf) {
  Factored f{spf[n], 0, 1, n};
  while (f.rest % f.p == 0) {
    f.rest /= f.p;
    f.pe *= f.p;
    ++f.e;
  }
  return f;
}

}  // namespace

void validate(const NewformData& form) {
  check_level_weight(form.level, form.weight);
  if (form.coeffs.empty()) throw DomainError("no coefficients");
  if (form.coeffs[0] != 1) throw InvariantError("c_1 must be 1", 1);

  const std::size_t m = form.terms();
  const auto spf = smallest_prime_factors(static_cast<std::uint32_t>(m));
  const auto& c = form.coeffs;
  BigInt p_power;  // p^{k-1} for the current prime

  for (std::uint64_t n = 2; n <= m; ++n) {
    const Factored f = split_smallest_prime(n, spf);
    if (f.rest > 1) {
      if (c[n - 1] != c[f.pe - 1] * c[f.rest - 1])
        throw InvariantError("multiplicativity violated: c_n != c_{p^e} c_m", n);
      continue;
    }
    const bool ramified = form.level % f.p == 0;
    p_power = boost::multiprecision::pow(BigInt(f.p), static_cast<unsigned>(form.weight - 1));
    if (f.e == 1) {
      const BigInt sq = c[n - 1] * c[n - 1];
      if (!ramified && sq > 4 * p_power)
        throw InvariantError("Deligne bound |a_p| <= 2 violated", n);
      if (ramified && sq > p_power)
        throw InvariantError("ramified bound |a_p| <= 1 violated", n);
      continue;
    }
    const BigInt& cp = c[f.p - 1];
    const BigInt& prev = c[f.pe / f.p - 1];
    BigInt expected = cp * prev;
    if (!ramified) expected -= p_power * c[f.pe / f.p / f.p - 1];
    if (c[n - 1] != expected)
      throw InvariantError("Hecke recursion at a prime power violated", n);
  }
}

std::vector<BigInt> extend_multiplicatively(const std::map<std::uint64_t, BigInt>& prime_coeffs,
                                            std::uint64_t level, int weight,
                                            std::size_t terms) {
  check_level_weight(level, weight);
  if (terms == 0) throw DomainError("need at least one coefficient");
  const auto spf = smallest_prime_factors(static_cast<std::uint32_t>(terms));
  std::vector<BigInt> c(terms);
  c[0] = 1;
  BigInt p_power;
  for (std::uint64_t n = 2; n <= terms; ++n) {
    const Factored f = split_smallest_prime(n, spf);
    if (f.rest > 1) {
      c[n - 1] = c[f.pe - 1] * c[f.rest - 1];
      continue;
    }
    if (f.e == 1) {
      auto it = prime_coeffs.find(f.p);
      if (it == prime_coeffs.end())
        throw DomainError("missing prime coefficient c_" + std::to_string(f.p));
      c[n - 1] = it->second;
      continue;
    }
    const BigInt& cp = c[f.p - 1];
    c[n - 1] = cp * c[f.pe / f.p - 1];
    if (level % f.p != 0) {
      p_power = boost::multiprecision::pow(BigInt(f.p), static_cast<unsigned>(weight - 1));
      c[n - 1] -= p_power * c[f.pe / f.p / f.p - 1];
    }
  }
  return c;
}

NewformData gen_delta(std::size_t terms) { return gen_level1_eigenform(12, terms); }

NewformData gen_level1_eigenform(int weight, std::size_t terms) {
  if (!is_supported_level1_weight(weight))
    throw DomainError("unsupported level-1 weight " + std::to_string(weight) +
                      " (need 12, 16, 18, 20, 22 or 26)");
  if (terms == 0) throw DomainError("need at least one coefficient");
  NewformData form;
  form.label = "1." + std::to_string(weight) + ".a.a";
  form.level = 1;
  form.weight = weight;
  form.sign = (weight / 2) % 2 == 0 ? Sign::plus : Sign::minus;
  form.coeffs = level1_eigenform_series(weight, terms);
  try {
    validate(form);
  } catch (const InvariantError& e) {
    throw GenerationError(std::string("q-expansion failed validation: ") + e.what());
  }
  return form;
}

double chebyshev_b(double a_p, int m, bool ramified) {
  if (m < 1) throw DomainError("chebyshev_b needs m >= 1");
  constexpr double slack = 1e-12;
  if (ramified) {
    if (std::abs(a_p) > 1 + slack) throw DomainError("|a_p| > 1 at a prime dividing the level");
    return std::pow(a_p, m);
  }
  if (std::abs(a_p) > 2 + slack) throw DomainError("|a_p| > 2 at a good prime");
  double prev = 2.0, cur = a_p;
  for (int i = 1; i < m; ++i) {
    const double next = a_p * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Conductor analytic_conductor(std::uint64_t level, int weight) {
  check_level_weight(level, weight);
  const double k = weight;
  Conductor c;
  c.q = static_cast<double>(level) * ((k - 1) / 2 + 3) * ((k + 1) / 2 + 3);
  c.log_q = std::log(c.q);
  return c;
}

}  // namespace mfzero

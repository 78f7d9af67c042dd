#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace oracle {

namespace {

std::vector<cpp_int> multiply(const std::vector<cpp_int>& a, const std::vector<cpp_int>& b,
                              std::size_t len) {
  std::vector<cpp_int> out(len, 0);
  for (std::size_t i = 0; i < len && i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < len && j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

cpp_int sigma(std::size_t n, int power) {
  cpp_int s = 0;
  for (std::size_t d = 1; d <= n; ++d)
    if (n % d == 0) s += boost::multiprecision::pow(cpp_int(d), power);
  return s;
}

// coefficients of q^0..q^{len-1}
std::vector<cpp_int> eisenstein(int k, std::size_t len) {
  const long long c = k == 4 ? 240 : -504;
  std::vector<cpp_int> e(len);
  e[0] = 1;
  for (std::size_t n = 1; n < len; ++n) e[n] = c * sigma(n, k - 1);
  return e;
}

}  // namespace

std::vector<cpp_int> naive_delta(std::size_t terms) {
  // prod (1 - q^n)^24 up to q^{terms - 1}, then shift by q
  std::vector<cpp_int> p(terms, 0);
  p[0] = 1;
  for (std::size_t n = 1; n < terms; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (std::size_t i = terms - 1; i >= n; --i) {
        p[i] -= p[i - n];
        if (i == n) break;
      }
  return p;  // p[j] is the coefficient of q^{j+1} in Delta
}

std::vector<cpp_int> naive_level1(int weight, std::size_t terms) {
  int a = 0, b = 0;
  switch (weight) {
    case 12: break;
    case 16: a = 1; break;
    case 18: b = 1; break;
    case 20: a = 2; break;
    case 22: a = 1; b = 1; break;
    case 26: a = 2; b = 1; break;
    default: return {};
  }
  // work with q-series indexed from q^1, so Delta[j] ~ q^{j+1}; E's from q^0
  std::vector<cpp_int> f = naive_delta(terms);
  const std::vector<cpp_int> e4 = eisenstein(4, terms), e6 = eisenstein(6, terms);
  for (int i = 0; i < a; ++i) f = multiply(f, e4, terms);
  for (int i = 0; i < b; ++i) f = multiply(f, e6, terms);
  return f;
}

std::uint64_t brute_points(const std::array<long long, 5>& a, std::uint64_t p) {
  const auto mod = [p](long long v) {
    const long long m = static_cast<long long>(p);
    return ((v % m) + m) % m;
  };
  std::uint64_t count = 1;
  const long long P = static_cast<long long>(p);
  for (long long x = 0; x < P; ++x)
    for (long long y = 0; y < P; ++y) {
      const long long lhs = mod(y * y + mod(a[0] * x) * y + a[2] * y);
      const long long rhs = mod(mod(x * x) * x + mod(a[1] * mod(x * x)) + a[3] * x + a[4]);
      if (lhs == rhs) ++count;
    }
  return count;
}

std::vector<std::uint64_t> trial_primes(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 2; k <= n; ++k) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= k; ++d)
      if (k % d == 0) {
        prime = false;
        break;
      }
    if (prime) out.push_back(k);
  }
  return out;
}

double prime_side_loop(const mfzero::NewformData& form, const mfzero::TestFunction& tf, double Y) {
  double total = 0;
  for (std::uint64_t p : trial_primes(static_cast<std::uint64_t>(Y))) {
    const double ap =
        form.c(p).convert_to<double>() / std::pow(static_cast<double>(p), (form.weight - 1) / 2.0);
    const bool ramified = form.level % p == 0;
    const double theta = ramified ? 0 : std::acos(std::clamp(ap / 2, -1.0, 1.0));
    const double lp = std::log(static_cast<double>(p));
    double pm = static_cast<double>(p);
    for (int m = 1; pm <= Y; ++m, pm *= static_cast<double>(p)) {
      const double b = ramified ? std::pow(ap, m) : 2 * std::cos(m * theta);
      total += b * (tf.F(m * lp) + tf.F(-m * lp)) * lp / std::sqrt(pm);
    }
  }
  return -total;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * f(a + i * h);
  return s * h / 3;
}

double fourier_cos(const mfzero::TestFunction& tf, double t, double L, int n) {
  return simpson([&](double x) { return tf.F(x) * std::cos(t * x); }, -L, L, n);
}

std::complex<double> incomplete_gamma_strip(std::complex<double> a, double x, double len, int n) {
  const auto g = [&](double u) { return std::exp((a - 1.0) * std::log(u) - u); };
  const double h = len / n;
  std::complex<double> s = g(x) + g(x + len);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * g(x + i * h);
  return s * h / 3.0;
}

std::complex<long double> lambda_series(const mfzero::NewformData& form, long double s,
                                        std::size_t terms) {
  const long double u = (form.weight - 1) / 2.0L;
  long double sum = 0;
  for (std::size_t n = 1; n <= terms && n <= form.terms(); ++n) {
    const long double c = form.c(n).convert_to<long double>();
    sum += c / std::pow(static_cast<long double>(n), u + s);
  }
  const long double ck = std::pow(2.0L, (3 - form.weight) / 2.0L) * std::sqrt(std::numbers::pi_v<long double>);
  const long double gamma = ck * std::pow(2 * std::numbers::pi_v<long double>, -s) * std::tgamma(s + u);
  return std::pow(static_cast<long double>(form.level), s / 2) * gamma * sum;
}

}  // namespace oracle

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <thread>

#include "mfzero/errors.hpp"
#include "mfzero/lfunction.hpp"

namespace mfzero {

int ZeroList::found() const {
  int n = 0;
  for (const Zero& z : zeros) n += z.multiplicity;
  return n;
}

double scan_step(const LFunction& lf, double t, const ZeroSearchOptions& options) {
  const double slope = std::max(1.0, lf.theta_derivative(t));
  return options.step_scale * std::min(options.max_step, std::numbers::pi / (4 * slope));
}

double count_estimate(const LFunction& lf, double t_max) {
  // N(T) = theta(T)/pi + S(T) for zeros in (0, T], with S of mean zero.  The
  // simple zero at the centre for w = -1 contributes its half of the
  // symmetric count on top.
  const double offset = lf.sign() == Sign::minus ? 0.5 : 0.0;
  return lf.theta(t_max) / std::numbers::pi + offset;
}

double turing_window(const LFunction& lf, double t_max) {
  const double spacing = std::numbers::pi / std::max(0.5, lf.theta_derivative(t_max));
  return std::min(t_max, std::max(5.0, 8 * spacing));
}

namespace {

struct Sample {
  double value = 0;
  std::optional<std::string> failure;
};

Sample sample(const LFunction& lf, double t) {
  try {
    return {lf.z(t), std::nullopt};
  } catch (const Error& e) {
    return {0, e.what()};
  }
}

// Runs job(i) for i in [0, count) over `threads` contiguous chunks.
template <class Job>
void run_chunked(std::size_t count, unsigned threads, Job job) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&job, begin, end] {
      for (std::size_t i = begin; i < end; ++i) job(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct Bracket {
  double lo, hi;
  double z_lo;
};

struct Refined {
  double t = 0;
  std::optional<std::string> failure;
};

Refined bisect(const LFunction& lf, Bracket b, double tolerance) {
  try {
    double lo = b.lo, hi = b.hi, z_lo = b.z_lo;
    while (hi - lo > 2 * tolerance) {
      const double mid = 0.5 * (lo + hi);
      const double z_mid = lf.z(mid);
      if (z_mid == 0) return {mid, std::nullopt};
      if ((z_mid > 0) == (z_lo > 0)) {
        lo = mid;
        z_lo = z_mid;
      } else {
        hi = mid;
      }
    }
    return {0.5 * (lo + hi), std::nullopt};
  } catch (const Error& e) {
    return {0, e.what()};
  }
}

}  // namespace

ZeroList find_zeros(const LFunction& lf, double t_max, const ZeroSearchOptions& options) {
  if (!(t_max > 0)) throw DomainError("t_max must be positive");
  if (!(options.step_scale > 0) || !(options.max_step > 0) || !(options.tolerance > 0))
    throw DomainError("scan step and tolerance must be positive");

  ZeroList out;
  out.t_max = t_max;
  out.count_estimate = count_estimate(lf, t_max);

  // The grid depends only on theta', so it can be laid out before any Z call.
  std::vector<double> grid{0.0};
  while (grid.back() < t_max)
    grid.push_back(std::min(t_max, grid.back() + scan_step(lf, grid.back(), options)));

  // For w = -1, Z is odd and vanishes at 0; its sign there is read just above.
  const bool odd = lf.sign() == Sign::minus;
  if (odd) {
    out.zeros.push_back({0.0, 1});
    grid[0] = std::min(1e-3, 0.5 * grid[1]);
  }

  std::vector<Sample> samples(grid.size());
  run_chunked(grid.size(), options.threads,
              [&](std::size_t i) { samples[i] = sample(lf, grid[i]); });

  std::size_t usable = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (samples[i].failure) {
      usable = i;
      out.diagnostic =
          "scan stopped at t = " + std::to_string(grid[i]) + ": " + *samples[i].failure;
      break;
    }
  }

  std::vector<Bracket> brackets;
  std::vector<double> exact;  // grid points where Z is exactly zero
  for (std::size_t i = 0; i + 1 < usable; ++i) {
    const double a = samples[i].value, b = samples[i + 1].value;
    if (a == 0 && !(odd && i == 0)) exact.push_back(grid[i]);
    if (a != 0 && b != 0 && (a > 0) != (b > 0)) brackets.push_back({grid[i], grid[i + 1], a});
  }
  if (usable == grid.size() && samples.back().value == 0) exact.push_back(grid.back());

  std::vector<Refined> refined(brackets.size());
  run_chunked(brackets.size(), options.threads,
              [&](std::size_t i) { refined[i] = bisect(lf, brackets[i], options.tolerance); });

  bool stopped = usable < grid.size();
  double cutoff = t_max;
  for (std::size_t i = 0; i < refined.size(); ++i) {
    if (refined[i].failure) {
      if (!stopped || brackets[i].lo < grid[usable]) {
        out.diagnostic = "refinement failed near t = " + std::to_string(brackets[i].lo) + ": " +
                         *refined[i].failure;
      }
      stopped = true;
      cutoff = brackets[i].lo;
      break;
    }
    out.zeros.push_back({refined[i].t, 1});
  }
  for (double t : exact)
    if (t <= cutoff) out.zeros.push_back({t, 1});
  std::sort(out.zeros.begin(), out.zeros.end(),
            [](const Zero& x, const Zero& y) { return x.t < y.t; });

  if (stopped) return out;

  // Turing-style check: S(t) = N(t) - count_estimate(t) averages to nearly
  // zero over any window of several zero spacings, while a missed pair of
  // sign changes below the window pushes that average down by 2.
  const double window = turing_window(lf, t_max);
  const double start = t_max - window;
  constexpr int kPoints = 2000;
  double sum = 0;
  std::size_t below = 0;
  int count = 0;
  for (int j = 0; j < kPoints; ++j) {
    const double t = start + window * (j + 0.5) / kPoints;
    while (below < out.zeros.size() && out.zeros[below].t <= t) count += out.zeros[below++].multiplicity;
    sum += count - count_estimate(lf, t);
  }
  const double mean_s = sum / kPoints;
  out.complete = std::abs(mean_s) < 1;
  if (!out.complete) {
    out.diagnostic = "found " + std::to_string(out.found()) + " zeros; N(t) - theta(t)/pi averages " +
                     std::to_string(mean_s) + " over [" + std::to_string(start) + ", " +
                     std::to_string(t_max) + "], so sign changes were missed";
  }
  return out;
}

}  // namespace mfzero

#include "mfzero/zero_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "mfzero/errors.hpp"

namespace mfzero {

ZeroMeasure build_measure(const NewformData& form, const ZeroList& zeros) {
  if (!zeros.complete) throw ConsistencyError("cannot build a measure from an incomplete zero list");
  ZeroMeasure mu;
  mu.conductor = analytic_conductor(form.level, form.weight);
  if (!(mu.conductor.log_q > 0)) throw InvariantError("analytic conductor must exceed 1", 0);
  mu.weight = 2 * std::numbers::pi / mu.conductor.log_q;
  mu.atoms = zeros.zeros;
  mu.t_max = zeros.t_max;
  mu.level = form.level;
  mu.form_weight = form.weight;
  return mu;
}

SideValue measure_apply(const ZeroMeasure& mu, const TestFunction& tf,
                        const ExplicitFormulaOptions& options) {
  ZeroList list;
  list.zeros = mu.atoms;
  list.t_max = mu.t_max;
  list.complete = true;
  const SideValue raw = zero_side(list, tf, mu.level, mu.form_weight, options);
  return {mu.weight * raw.value, mu.weight * raw.error};
}

double window_count(const ZeroMeasure& mu, double a, double b) {
  if (!(a < b) || a < -mu.t_max || b > mu.t_max) {
    std::ostringstream msg;
    msg << "window [" << a << ", " << b << ") is empty or outside [-" << mu.t_max << ", "
        << mu.t_max << "]";
    throw DomainError(msg.str());
  }
  const auto inside = [&](double t) { return a <= t && t < b; };
  long long count = 0;
  for (const Zero& z : mu.atoms) {
    if (z.t == 0) {
      if (inside(0)) count += z.multiplicity;
      continue;
    }
    if (inside(z.t)) count += z.multiplicity;
    if (inside(-z.t)) count += z.multiplicity;
  }
  return mu.weight * static_cast<double>(count);
}

SlowGrowth slow_growth(const ZeroMeasure& mu) {
  SlowGrowth out;
  for (const Zero& z : mu.atoms) {
    const double mass = z.t == 0 ? 1.0 : 2.0;
    out.value += mu.weight * mass * z.multiplicity / (z.t * z.t + 1);
  }
  // Atoms above T have density at most rho(t) = log(c (t + h)) / pi + 1 per
  // sign, c = sqrt(N) / 2 pi, h = k / 2.  With log(t + h) <= log t + h / t,
  //   int_T^inf 2 rho(t) / t^2 dt <= 2 [ ((log(cT) + 1) / T + h / (2 T^2)) / pi + 1 / T ].
  const double T = mu.t_max;
  if (T > 0) {
    const double c = std::sqrt(static_cast<double>(mu.level)) / (2 * std::numbers::pi);
    const double h = mu.form_weight / 2.0;
    const double log_part = std::max(0.0, (std::log(c * T) + 1) / T) + h / (2 * T * T);
    out.tail = mu.weight * 2 * (log_part / std::numbers::pi + 1 / T);
  } else {
    out.tail = std::numeric_limits<double>::infinity();
  }
  return out;
}

EquidistRow equidist_row(const NewformData& form, const ZeroList& zeros, const TestFunction& tf,
                         const ExplicitFormulaOptions& options) {
  const ZeroMeasure mu = build_measure(form, zeros);
  const SideValue applied = measure_apply(mu, tf, options);
  EquidistRow row;
  row.label = form.label;
  row.level = form.level;
  row.weight = form.weight;
  row.log_qf = mu.conductor.log_q;
  const double log_n = std::log(static_cast<double>(form.level));
  row.alpha = log_n / (log_n + std::log(static_cast<double>(form.weight)));
  row.measure_value = applied.value;
  row.target = tf.phi_integral();
  row.error = std::abs(applied.value - row.target);
  row.tail = applied.error;
  return row;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

EquidistReport assess_family(std::vector<EquidistRow> rows) {
  if (rows.empty()) throw DomainError("equidistribution report needs at least one form");
  std::stable_sort(rows.begin(), rows.end(), [](const EquidistRow& x, const EquidistRow& y) {
    return x.log_qf < y.log_qf;
  });

  EquidistReport report;
  double num = 0, den = 0;
  for (const EquidistRow& r : rows) {
    num += r.error / r.log_qf;
    den += 1 / (r.log_qf * r.log_qf);
  }
  report.fitted_C = num / den;

  if (rows.size() == 1) {
    report.pass = true;
  } else {
    for (const EquidistRow& r : rows)
      if (r.error > 2 * report.fitted_C / r.log_qf) report.failing.push_back(r.label);
    const std::size_t half = rows.size() / 2;
    std::vector<double> lower, upper;
    for (std::size_t i = 0; i < half; ++i) lower.push_back(rows[i].error);
    for (std::size_t i = rows.size() - half; i < rows.size(); ++i) upper.push_back(rows[i].error);
    report.median_decreases = median(upper) < median(lower);
    report.pass = report.failing.empty() && report.median_decreases;
  }
  report.rows = std::move(rows);
  return report;
}

EquidistReport family_trend(const std::vector<NewformData>& forms, const TestFunction& tf,
                            double t_max, const FamilyOptions& options) {
  if (forms.empty()) throw DomainError("family_trend needs at least one form");

  std::vector<std::optional<EquidistRow>> rows(forms.size());
  std::vector<std::string> failures(forms.size());
  const auto run = [&](std::size_t i) {
    const NewformData& form = forms[i];
    try {
      const Sign sign =
          form.sign == Sign::unknown ? detect_sign(form, options.engine).sign : form.sign;
      const LFunction lf(form, sign, options.engine);
      const ZeroList zeros = find_zeros(lf, t_max, options.search);
      if (!zeros.complete) throw ConsistencyError("zero list incomplete: " + zeros.diagnostic);
      rows[i] = equidist_row(form, zeros, tf, options.formula);
    } catch (const std::exception& e) {
      failures[i] = form.label + ": " + e.what();
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, forms.size()));
  if (threads == 1) {
    for (std::size_t i = 0; i < forms.size(); ++i) run(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < forms.size(); i += threads) run(i);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<EquidistRow> done;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (!failures[i].empty()) throw Error(failures[i]);
    done.push_back(std::move(*rows[i]));
  }
  return assess_family(std::move(done));
}

std::vector<SmallestZeroRow> smallest_zero_report(const std::vector<NewformData>& forms,
                                                  const std::vector<ZeroList>& zeros) {
  if (forms.size() != zeros.size())
    throw DomainError("smallest_zero_report needs one zero list per form");
  std::vector<SmallestZeroRow> out;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (zeros[i].zeros.empty()) continue;
    SmallestZeroRow row;
    row.label = forms[i].label;
    row.log_qf = analytic_conductor(forms[i].level, forms[i].weight).log_q;
    row.smallest = zeros[i].zeros.front().t;
    row.scaled = row.smallest * row.log_qf;
    out.push_back(row);
  }
  std::stable_sort(out.begin(), out.end(), [](const SmallestZeroRow& x, const SmallestZeroRow& y) {
    return x.log_qf < y.log_qf;
  });
  return out;
}

}  // namespace mfzero

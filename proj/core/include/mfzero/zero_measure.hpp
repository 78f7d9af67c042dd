#pragma once

#include <string>
#include <vector>

#include "mfzero/explicit_formula.hpp"
#include "mfzero/lfunction.hpp"
#include "mfzero/newform_data.hpp"
#include "mfzero/test_function.hpp"

namespace mfzero {

/// Delta_f = (2 pi / log q_f) sum_rho delta_{t(rho)}: the stored ordinates and
/// their mirror images, each with weight 2 pi / log q_f.
struct ZeroMeasure {
  std::vector<Zero> atoms;  // t >= 0; t > 0 stands for the pair +-t
  double weight = 0;
  Conductor conductor;
  double t_max = 0;
  std::uint64_t level = 1;
  int form_weight = 2;
};

ZeroMeasure build_measure(const NewformData& form, const ZeroList& zeros);

/// weight * zero_side(atoms, tf): the value and its scaled density tail.
SideValue measure_apply(const ZeroMeasure& mu, const TestFunction& tf,
                        const ExplicitFormulaOptions& options = {});

/// Mass of [a, b) (half-open), -t_max <= a < b <= t_max.
double window_count(const ZeroMeasure& mu, double a, double b);

/// int (t^2 + 1)^{-1} dDelta_f over the stored atoms, with a bound for the
/// atoms above t_max from the zero-density envelope.
struct SlowGrowth {
  double value = 0;
  double tail = 0;
};
SlowGrowth slow_growth(const ZeroMeasure& mu);

struct EquidistRow {
  std::string label;
  std::uint64_t level = 1;
  int weight = 2;
  double log_qf = 0;
  double alpha = 0;  // log N / (log N + log k)
  double measure_value = 0;
  double target = 0;  // int phi dt
  double error = 0;   // |measure_value - target|
  double tail = 0;
};

struct EquidistReport {
  std::vector<EquidistRow> rows;  // increasing q_f
  double fitted_C = 0;            // least squares for error ~ C / log q_f
  bool pass = false;
  std::vector<std::string> failing;  // labels with error > 2 C / log q_f
  bool median_decreases = true;
};

struct FamilyOptions {
  EngineOptions engine;
  ZeroSearchOptions search;
  ExplicitFormulaOptions formula;
  /// Forms processed concurrently.
  unsigned threads = 1;
};

/// Per form: root number (detected when unknown), zeros to t_max, measure,
/// and its pairing with phi.  C minimizes sum (e_j - C / log q_j)^2; the
/// family passes when every e_j <= 2 C / log q_j and the median error of the
/// upper half (by q_f) is below that of the lower half.  A single form passes
/// by convention.
EquidistReport family_trend(const std::vector<NewformData>& forms, const TestFunction& tf,
                            double t_max, const FamilyOptions& options = {});

/// Rows already computed (for callers with cached zeros).
EquidistReport assess_family(std::vector<EquidistRow> rows);

EquidistRow equidist_row(const NewformData& form, const ZeroList& zeros, const TestFunction& tf,
                         const ExplicitFormulaOptions& options = {});

struct SmallestZeroRow {
  std::string label;
  double log_qf = 0;
  double smallest = 0;  // 0 when a central zero is present
  double scaled = 0;    // smallest * log q_f
};

/// Sorted by q_f.  Forms without a stored ordinate are skipped.
std::vector<SmallestZeroRow> smallest_zero_report(const std::vector<NewformData>& forms,
                                                  const std::vector<ZeroList>& zeros);

}  // namespace mfzero

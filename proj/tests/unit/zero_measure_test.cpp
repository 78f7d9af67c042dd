#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mfzero/zero_measure.hpp"

using mfzero::EquidistRow;

namespace {

mfzero::ZeroList list_of(std::vector<mfzero::Zero> zeros, double t_max = 40) {
  mfzero::ZeroList l;
  l.zeros = std::move(zeros);
  l.t_max = t_max;
  l.complete = true;
  return l;
}

EquidistRow row(const std::string& label, double log_q, double error) {
  EquidistRow r;
  r.label = label;
  r.log_qf = log_q;
  r.error = error;
  return r;
}

}  // namespace

TEST(ZeroMeasure, DeltaWeight) {
  const auto mu = mfzero::build_measure(fixture::form("1.12", 10), list_of({}));
  EXPECT_NEAR(mu.weight, 2 * std::numbers::pi / std::log(80.75), 1e-15);
  EXPECT_NEAR(mu.weight, 1.43078, 5e-5);
  EXPECT_TRUE(mu.atoms.empty());
}

TEST(ZeroMeasure, IncompleteListRejected) {
  auto l = list_of({});
  l.complete = false;
  EXPECT_THROW(mfzero::build_measure(fixture::form("1.12", 10), l), mfzero::ConsistencyError);
}

TEST(ZeroMeasure, ApplyToCentralAtom) {
  const auto mu = mfzero::build_measure(fixture::form("1.18", 10), list_of({{0, 1}}));
  const auto tf = mfzero::make_gaussian(1);
  EXPECT_NEAR(mfzero::measure_apply(mu, tf).value, mu.weight * tf.phi(0), 1e-15);
}

TEST(ZeroMeasure, ApplyIsLinear) {
  const auto& form = fixture::form("1.12", 10);
  auto zeros = fixture::zeros("1.12");
  const auto tf = mfzero::make_gaussian(1), tg = mfzero::make_sech(0.8);
  const auto mu = mfzero::build_measure(form, zeros);
  const double v = mfzero::measure_apply(mu, tf).value;
  EXPECT_NEAR(mfzero::measure_apply(mu, tf + 2.0 * tg).value,
              v + 2 * mfzero::measure_apply(mu, tg).value, 1e-12);
  for (auto& z : zeros.zeros) z.multiplicity *= 2;
  EXPECT_NEAR(mfzero::measure_apply(mfzero::build_measure(form, zeros), tf).value, 2 * v, 1e-12);
}

TEST(ZeroMeasure, DeltaDirectSum) {
  const auto& zeros = fixture::zeros("1.12");
  const auto mu = mfzero::build_measure(fixture::form("1.12", 10), zeros);
  const auto tf = mfzero::make_sech(1.5);
  double direct = 0;
  for (const auto& z : zeros.zeros) direct += 2 * z.multiplicity * tf.phi(z.t);
  const auto applied = mfzero::measure_apply(mu, tf);
  EXPECT_NEAR(applied.value, mu.weight * direct, 1e-13);
  EXPECT_GT(applied.error, 0);
}

TEST(WindowCount, CountsBothSignsHalfOpen) {
  const auto mu = mfzero::build_measure(fixture::form("1.18", 10), list_of({{0, 1}, {3, 1}, {5, 2}}, 10));
  EXPECT_DOUBLE_EQ(mfzero::window_count(mu, 1, 2), 0);
  EXPECT_DOUBLE_EQ(mfzero::window_count(mu, -10, 10), mu.weight * 7);
  EXPECT_DOUBLE_EQ(mfzero::window_count(mu, 3, 5), mu.weight * 1);
  EXPECT_DOUBLE_EQ(mfzero::window_count(mu, -5, 3), mu.weight * 4);
  for (double b : {-4.0, 0.0, 3.0, 4.5})
    EXPECT_DOUBLE_EQ(mfzero::window_count(mu, -9, b) + mfzero::window_count(mu, b, 9),
                     mfzero::window_count(mu, -9, 9));
  EXPECT_THROW(mfzero::window_count(mu, -11, 0), mfzero::DomainError);
  EXPECT_THROW(mfzero::window_count(mu, 2, 2), mfzero::DomainError);
}

TEST(WindowCount, DeltaSymmetricWindow) {
  const auto& zeros = fixture::zeros("1.12");
  const auto mu = mfzero::build_measure(fixture::form("1.12", 10), zeros);
  int below = 0;
  for (const auto& z : zeros.zeros) below += z.t <= 15 ? z.multiplicity : 0;
  EXPECT_DOUBLE_EQ(mfzero::window_count(mu, -15, 15), mu.weight * 2 * below);
  EXPECT_DOUBLE_EQ(mfzero::window_count(mu, -5, 5), 0);
}

TEST(SlowGrowth, FiniteWithTailBound) {
  const auto mu = mfzero::build_measure(fixture::form("1.12", 10), fixture::zeros("1.12"));
  const auto g = mfzero::slow_growth(mu);
  EXPECT_TRUE(std::isfinite(g.value));
  EXPECT_GT(g.value, 0);
  EXPECT_TRUE(std::isfinite(g.tail));
  // the bound at T = 20 must cover what the atoms in (20, 40] actually add
  auto half = fixture::zeros("1.12");
  std::erase_if(half.zeros, [](const mfzero::Zero& z) { return z.t > 20; });
  half.t_max = 20;
  const auto h = mfzero::slow_growth(mfzero::build_measure(fixture::form("1.12", 10), half));
  EXPECT_LE(g.value - h.value, h.tail);
}

TEST(SlowGrowth, PartialSumsSettleAtTmax) {
  const auto mu = mfzero::build_measure(fixture::form("1.12", 10), fixture::zeros("1.12"));
  double sum = 0, last_step = 0;
  for (const mfzero::Zero& z : mu.atoms) {
    last_step = mu.weight * (z.t == 0 ? 1.0 : 2.0) * z.multiplicity / (z.t * z.t + 1);
    sum += last_step;
  }
  EXPECT_GT(sum, 0);
  EXPECT_LT(last_step, 1e-6) << "partial sums still move by " << last_step << " at t_max";
}

TEST(AssessFamily, SingleFormPassesByConvention) {
  const auto r = mfzero::assess_family({row("a", 4, 0.3)});
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.fitted_C, 0.3 * 4, 1e-15);
}

TEST(AssessFamily, DecreasingErrorsPass) {
  const auto r = mfzero::assess_family(
      {row("c", 6, 1.0 / 6), row("a", 4, 1.0 / 4), row("b", 5, 1.0 / 5), row("d", 7, 1.0 / 7)});
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.fitted_C, 1, 1e-14);
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_EQ(r.rows.front().label, "a");
  EXPECT_EQ(r.rows.back().label, "d");
}

TEST(AssessFamily, OutlierAndRisingMedianFail) {
  const auto outlier = mfzero::assess_family({row("a", 4, 0.01), row("b", 5, 0.01), row("c", 6, 5)});
  EXPECT_FALSE(outlier.pass);
  EXPECT_EQ(outlier.failing, std::vector<std::string>{"c"});

  const auto rising = mfzero::assess_family({row("a", 4, 0.2), row("b", 5, 0.25)});
  EXPECT_FALSE(rising.median_decreases);
  EXPECT_FALSE(rising.pass);
}

TEST(EquidistRow, AlphaColumn) {
  const auto tf = mfzero::make_gaussian(1);
  const auto r11 = mfzero::equidist_row(fixture::form("11a", 10), list_of({}), tf);
  EXPECT_NEAR(r11.alpha, std::log(11.0) / (std::log(11.0) + std::log(2.0)), 1e-15);
  EXPECT_NEAR(r11.alpha, 0.7757, 1e-4);
  const auto r1 = mfzero::equidist_row(fixture::form("1.12", 10), list_of({}), tf);
  EXPECT_EQ(r1.alpha, 0);
  EXPECT_DOUBLE_EQ(r1.target, 2 * std::numbers::pi);
}

TEST(FamilyTrend, ErrorsCarryTheLabel) {
  mfzero::NewformData broken = fixture::form("11a");
  broken.coeffs.resize(10);
  broken.label = "tiny";
  broken.sign = mfzero::Sign::plus;
  try {
    mfzero::family_trend({broken}, mfzero::make_gaussian(1), 40);
    FAIL();
  } catch (const mfzero::Error& e) {
    EXPECT_EQ(std::string(e.what()).rfind("tiny: ", 0), 0u) << e.what();
  }
}

TEST(FamilyTrend, LevelOneFamilyThreaded) {
  std::vector<mfzero::NewformData> forms;
  for (const char* key : {"1.12", "1.16", "1.18"}) forms.push_back(fixture::form(key, 2000));
  mfzero::FamilyOptions serial, par;
  par.threads = 3;
  const auto a = mfzero::family_trend(forms, mfzero::make_gaussian(1), 25, serial);
  const auto b = mfzero::family_trend(forms, mfzero::make_gaussian(1), 25, par);
  ASSERT_EQ(a.rows.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a.rows[i].error, b.rows[i].error);
  for (std::size_t i = 1; i < 3; ++i) EXPECT_GT(a.rows[i].log_qf, a.rows[i - 1].log_qf);
}

TEST(SmallestZero, SortedAndScaled) {
  std::vector<mfzero::NewformData> forms = {fixture::form("1.18", 10), fixture::form("1.12", 10)};
  std::vector<mfzero::ZeroList> zeros = {fixture::zeros("1.18"), fixture::zeros("1.12")};
  const auto rows = mfzero::smallest_zero_report(forms, zeros);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].label, "1.12.a.a");
  EXPECT_NEAR(rows[0].scaled, rows[0].smallest * std::log(80.75), 1e-12);
  EXPECT_EQ(rows[1].smallest, 0);
  EXPECT_THROW(mfzero::smallest_zero_report(forms, {}), mfzero::DomainError);
}

#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mfzero/lfunction.hpp"
#include "mfzero/special_fn.hpp"
#include "oracles.hpp"

using C = std::complex<double>;
using mfzero::LFunction;
using mfzero::Sign;

TEST(GammaFactor, DuplicationFormula) {
  for (int k : {2, 12, 16, 26})
    for (C s : {C(0.5, 0), C(0.5, 10), C(2, 0)}) {
      const mfzero::GammaFactor g{k};
      const C one = g(s), two = g.two_gamma_form(s);
      EXPECT_LT(std::abs(one - two), 1e-10 * std::abs(one)) << "k=" << k << " s=" << s;
    }
}

TEST(GammaFactor, Constant) {
  EXPECT_NEAR(mfzero::GammaFactor{12}.c_k(), std::pow(2.0, -4.5) * std::sqrt(std::numbers::pi), 1e-16);
  // k = 2, s = 1: sqrt(2 pi) * Gamma(3/2) / (2 pi) = sqrt(2) / 4
  EXPECT_NEAR(std::abs(mfzero::gamma_factor(2, C(1, 0))), std::sqrt(2.0) / 4, 4e-15);
}

TEST(Theta, ReferenceValueAndShape) {
  EXPECT_NEAR(mfzero::phase_theta(1, 12, 40), 42.303555244722145689, 1e-11);
  for (auto [N, k] : {std::pair<std::uint64_t, int>{1, 12}, {11, 2}, {1, 26}, {37, 2}}) {
    EXPECT_EQ(mfzero::phase_theta(N, k, 0), 0.0);
    // near 0 theta' = Re psi(k/2 + it) - log(2 pi / sqrt N) can be negative
    double from = 0.1;
    while (mfzero::phase_theta_derivative(N, k, from) <= 0) from += 0.1;
    EXPECT_LT(from, 5);
    double prev = mfzero::phase_theta(N, k, from);
    for (double t = from + 0.1; t < 100; t += 0.1) {
      const double now = mfzero::phase_theta(N, k, t);
      EXPECT_GT(now, prev) << t;
      prev = now;
    }
    for (double t : {20.0, 50.0, 100.0}) {
      const double d = mfzero::phase_theta_derivative(N, k, t);
      const double fd = (mfzero::phase_theta(N, k, t + 1e-4) - mfzero::phase_theta(N, k, t - 1e-4)) / 2e-4;
      EXPECT_NEAR(d, fd, 1e-6 * d);
      const double approx = std::log(std::sqrt(double(N)) * std::hypot(t, k / 2.0) / (2 * std::numbers::pi));
      EXPECT_NEAR(d / approx, 1, 0.1) << "N=" << N << " k=" << k << " t=" << t;
    }
  }
}

TEST(Lambda, MatchesDirichletSeriesInConvergenceRegion) {
  const auto& delta = fixture::form("1.12", 100000);
  for (double s : {2.0, 1.8}) {
    const C afe = mfzero::lambda_value(delta, C(s, 0));
    const auto series = oracle::lambda_series(delta, s, 100000);
    EXPECT_LT(std::abs(afe - C(double(series.real()), 0)), 1e-8 * std::abs(afe)) << "s=" << s;
  }
  const auto& e11 = fixture::form("11a", 4000);
  const LFunction lf(e11, Sign::plus);
  for (double s : {3.0, 4.0}) {
    const auto series = oracle::lambda_series(e11, s, 4000);
    EXPECT_LT(std::abs(lf.lambda(C(s, 0)).value - C(double(series.real()), 0)),
              1e-9 * std::abs(double(series.real())));
  }
}

TEST(Lambda, FunctionalEquation) {
  for (const std::string& key : {"1.12", "1.18", "11a", "37a"}) {
    const LFunction lf(fixture::form(key), fixture::sign_of(key));
    const double w = mfzero::to_int(lf.sign());
    for (C s : {C(0.2, 3), C(0.9, 7.5), C(-0.5, 1), C(1.5, 12)}) {
      const C a = lf.lambda(s).value, b = lf.lambda(1.0 - s).value;
      EXPECT_LT(std::abs(a - w * b), 1e-11 * (std::abs(a) + 1e-300) + 1e-25) << key << " " << s;
    }
  }
}

TEST(Lambda, SplitPointIndependence) {
  const LFunction lf(fixture::form("11a"), Sign::plus);
  for (C s : {C(0.5, 5), C(0.5, 33), C(1.2, -4)}) {
    const C ref = lf.lambda(s, 1.0).value;
    for (double A : {0.8, 1.125, 1.4})
      EXPECT_LT(std::abs(lf.lambda(s, A).value - ref), 1e-12 * std::abs(ref) + 1e-28) << s << " A=" << A;
  }
}

TEST(Lambda, ReferenceValueHighOnTheLine) {
  // 40-digit evaluation of the same expansion, frozen
  const LFunction lf(fixture::form("1.12"), Sign::plus);
  EXPECT_NEAR(lf.lambda(C(0.5, 40)).value.real() / -2.79439114328512e-20, 1, 1e-10);
}

TEST(Lambda, TooFewCoefficients) {
  const auto& e11 = fixture::form("11a");
  mfzero::NewformData cut = e11;
  cut.coeffs.resize(8);
  const LFunction lf(cut, Sign::plus);
  EXPECT_THROW(lf.lambda(C(0.5, 40)), mfzero::InsufficientTermsError);
}

TEST(Lambda, QuadAndDoubleAgree) {
  mfzero::EngineOptions fast;
  fast.precision.working_digits = 15;
  const LFunction lq(fixture::form("1.16"), Sign::plus);
  const LFunction ld(fixture::form("1.16"), Sign::plus, fast);
  for (double t : {0.0, 5.0, 15.0}) {
    const C q = lq.lambda(C(0.5, t)).value, d = ld.lambda(C(0.5, t)).value;
    EXPECT_LT(std::abs(q - d), 1e-9 * std::abs(q)) << t;
  }
}

TEST(ZFunction, RealOnTheLineForBuiltinForms) {
  for (const std::string& key : fixture::builtin_keys()) {
    const LFunction lf(fixture::form(key), fixture::sign_of(key));
    for (double t = 0; t <= 30; t += 1.25) {
      const auto z = lf.z_value(t);
      EXPECT_LE(std::abs(z.discarded), std::max(z.tail, 1e-9 * (1 + std::abs(z.value)))) << key << " t=" << t;
    }
  }
}

TEST(ZFunction, WrongSignIsCaught) {
  const LFunction wrong(fixture::form("1.18"), Sign::plus);
  EXPECT_THROW(wrong.z_value(3.0), mfzero::ConsistencyError);
}

TEST(ZFunction, OddForMinusSign) {
  const LFunction lf(fixture::form("1.18"), Sign::minus);
  EXPECT_NEAR(lf.z(2.5), -lf.z(-2.5), 1e-12 * std::abs(lf.z(2.5)));
  EXPECT_NEAR(lf.z(0), 0, 1e-25);
}

TEST(DetectSign, BuiltinAndExtraForms) {
  EXPECT_EQ(fixture::sign_of("1.12"), Sign::plus);
  EXPECT_EQ(fixture::sign_of("1.16"), Sign::plus);
  EXPECT_EQ(fixture::sign_of("1.18"), Sign::minus);
  EXPECT_EQ(fixture::sign_of("1.20"), Sign::plus);
  EXPECT_EQ(fixture::sign_of("1.22"), Sign::minus);
  EXPECT_EQ(fixture::sign_of("1.26"), Sign::minus);
  // prime conductor, weight 2: w equals c_N
  for (auto [key, N] : {std::pair<std::string, std::uint64_t>{"11a", 11}, {"37a", 37}}) {
    const auto& f = fixture::form(key);
    EXPECT_EQ(mfzero::to_int(fixture::sign_of(key)), f.c(N).convert_to<int>()) << key;
    const auto d = mfzero::detect_sign(f);
    EXPECT_GT(std::max(d.residual_plus, d.residual_minus) / std::min(d.residual_plus, d.residual_minus), 1e3);
  }
}

TEST(Zeros, FirstZeroOfDelta) {
  const auto& z = fixture::zeros("1.12");
  ASSERT_TRUE(z.complete);
  ASSERT_FALSE(z.zeros.empty());
  EXPECT_NEAR(z.zeros.front().t, 9.22237939992, 1e-8);
  EXPECT_NEAR(z.zeros[1].t, 13.9075498613, 1e-8);
}

TEST(Zeros, CentralZeroForMinusSign) {
  for (const std::string& key : {"1.18", "37a"}) {
    const auto& z = fixture::zeros(key);
    ASSERT_FALSE(z.zeros.empty());
    EXPECT_EQ(z.zeros.front().t, 0.0) << key;
    EXPECT_EQ(z.zeros.front().multiplicity, 1) << key;
  }
  EXPECT_GT(fixture::zeros("1.12").zeros.front().t, 0);
}

TEST(Zeros, IncreasingAndWithinRange) {
  for (const std::string& key : fixture::builtin_keys()) {
    const auto& z = fixture::zeros(key);
    EXPECT_TRUE(z.complete) << key << ": " << z.diagnostic;
    for (std::size_t i = 1; i < z.zeros.size(); ++i) EXPECT_GT(z.zeros[i].t, z.zeros[i - 1].t);
    EXPECT_LE(z.zeros.back().t, 40.0);
    EXPECT_LE(std::abs(z.found() - z.count_estimate), 1.0) << key;
  }
}

TEST(Zeros, StableUnderRefinement) {
  const auto& delta = fixture::form("1.12");
  mfzero::EngineOptions twice;
  twice.term_factor = 2;
  mfzero::ZeroSearchOptions fine;
  fine.step_scale = 0.5;
  const auto a = mfzero::find_zeros(LFunction(delta, Sign::plus), 20);
  const auto b = mfzero::find_zeros(LFunction(delta, Sign::plus, twice), 20, fine);
  ASSERT_EQ(a.zeros.size(), b.zeros.size());
  for (std::size_t i = 0; i < a.zeros.size(); ++i) EXPECT_NEAR(a.zeros[i].t, b.zeros[i].t, 1e-8);
}

TEST(Zeros, ThreadCountDoesNotChangeResult) {
  const LFunction lf(fixture::form("11a"), Sign::plus);
  mfzero::ZeroSearchOptions many;
  many.threads = 3;
  const auto a = mfzero::find_zeros(lf, 15);
  const auto b = mfzero::find_zeros(lf, 15, many);
  ASSERT_EQ(a.zeros.size(), b.zeros.size());
  for (std::size_t i = 0; i < a.zeros.size(); ++i) EXPECT_EQ(a.zeros[i].t, b.zeros[i].t);
}

TEST(Zeros, ShortRangeAndTruncation) {
  const LFunction lf(fixture::form("1.12"), Sign::plus);
  const auto none = mfzero::find_zeros(lf, 0.5);
  EXPECT_TRUE(none.complete);
  EXPECT_TRUE(none.zeros.empty());

  mfzero::NewformData cut = fixture::form("11a");
  cut.coeffs.resize(30);
  const auto partial = mfzero::find_zeros(LFunction(cut, Sign::plus), 40);
  EXPECT_FALSE(partial.complete);
  EXPECT_FALSE(partial.diagnostic.empty());
}

TEST(Zeros, ScanStepBounds) {
  const LFunction lf(fixture::form("1.26"), Sign::minus);
  for (double t : {0.0, 10.0, 40.0}) {
    const double h = mfzero::scan_step(lf, t);
    EXPECT_LE(h, 0.05);
    EXPECT_LE(h, std::numbers::pi / (4 * std::max(1.0, lf.theta_derivative(t))) + 1e-15);
  }
}

TEST(Zeros, CoarseScanIsFlaggedIncomplete) {
  mfzero::ZeroSearchOptions coarse;
  coarse.max_step = 2.5;
  coarse.step_scale = 10;  // steps far longer than the zero spacing
  const auto z = mfzero::find_zeros(LFunction(fixture::form("11a"), Sign::plus), 40, coarse);
  EXPECT_FALSE(z.complete);
  EXPECT_NE(z.diagnostic.find("missed"), std::string::npos) << z.diagnostic;
}

TEST(Zeros, PrecisionCeilingStopsTheScan) {
  const auto z = mfzero::find_zeros(LFunction(fixture::form("11a"), Sign::plus), 60);
  EXPECT_FALSE(z.complete);
  EXPECT_NE(z.diagnostic.find("precision exhausted"), std::string::npos) << z.diagnostic;
  EXPECT_GT(z.found(), 25);
}

TEST(Zeros, CountEstimateIsTheSmoothCount) {
  const LFunction plus(fixture::form("1.12"), Sign::plus), minus(fixture::form("1.18"), Sign::minus);
  EXPECT_DOUBLE_EQ(mfzero::count_estimate(plus, 30), plus.theta(30) / std::numbers::pi);
  EXPECT_DOUBLE_EQ(mfzero::count_estimate(minus, 30), minus.theta(30) / std::numbers::pi + 0.5);
}

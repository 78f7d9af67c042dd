#include "mfzero/lfunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mfzero/errors.hpp"
#include "mfzero/special_fn.hpp"

namespace mfzero {

namespace {

using cplx = std::complex<double>;

double c_k_value(int weight) {
  return std::exp2((3.0 - weight) / 2.0) * std::sqrt(std::numbers::pi);
}

void check_weight(int weight) {
  if (weight < 2 || weight % 2 != 0) throw DomainError("weight must be even and >= 2");
}

// Upper bound for |Gamma(a, x)| with Re a = rho, x > 0.
//   rho <= 1: x^{rho-1} e^{-x}
//   rho  > 1: x^{rho-1} e^{-x} / (1 - (rho-1)/x) once x > 2(rho-1), else Gamma(rho)
double log_incomplete_gamma_bound(double rho, double x) {
  const double base = (rho - 1) * std::log(x) - x;
  if (rho <= 1) return base;
  if (x > 2 * (rho - 1)) return base - std::log1p(-(rho - 1) / x);
  return std::lgamma(rho);
}

}  // namespace

double GammaFactor::c_k() const { return c_k_value(weight); }

cplx GammaFactor::operator()(cplx s) const {
  check_weight(weight);
  const double u = (weight - 1) / 2.0;
  const cplx lg = special::log_gamma<double>(s + u);
  return c_k() * std::exp(lg - s * std::log(2 * std::numbers::pi));
}

cplx GammaFactor::two_gamma_form(cplx s) const {
  check_weight(weight);
  const double u = (weight - 1) / 2.0;
  const cplx lg = special::log_gamma<double>((s + u) / 2.0) +
                  special::log_gamma<double>((s + u + 1.0) / 2.0);
  return std::exp(lg - s * std::log(std::numbers::pi));
}

cplx gamma_factor(int weight, cplx s) { return GammaFactor{weight}(s); }

// ---------------------------------------------------------------------------

template <class Real>
struct Afe {
  using C = std::complex<Real>;
  Real ck;
  Real u;
  Real step;  // X_1 = 2 pi / sqrt(N)
  std::vector<Real> an;
  std::vector<Real> log_x;

  Afe(const NewformData& form) {
    using std::log;
    using std::sqrt;
    const Real pi = special::detail::pi<Real>();
    u = Real(form.weight - 1) / 2;
    ck = sqrt(pi);
    ck *= pow(Real(2), (Real(3) - form.weight) / 2);
    step = 2 * pi / sqrt(Real(form.level));
    an = normalize<Real>(form).an;
    log_x.resize(an.size());
    for (std::size_t n = 1; n <= an.size(); ++n) log_x[n - 1] = log(step * Real(n));
  }

  // `noise` receives eps * c_k * sum |term|, the rounding floor of the result.
  void sums(cplx s_in, double split, std::size_t terms, cplx& plus, cplx& minus,
            double& noise) const {
    const C s(Real(s_in.real()), Real(s_in.imag()));
    const Real A(split);
    const C a1 = s + u;
    const C a2 = Real(1) - s + u;
    C f(0, 0), g(0, 0);
    Real magnitude(0);
    for (std::size_t n = 1; n <= terms; ++n) {
      const Real a = an[n - 1];
      if (a == 0) continue;
      const Real x = step * Real(n);
      const Real lx = log_x[n - 1];
      const C tf = a * std::exp(-s * lx) * special::upper_incomplete_gamma<Real>(a1, x * A);
      const C tg = a * std::exp((s - Real(1)) * lx) * special::upper_incomplete_gamma<Real>(a2, x / A);
      f += tf;
      g += tg;
      magnitude += std::abs(tf) + std::abs(tg);
    }
    const C p = ck * (f + g);
    const C m = ck * (f - g);
    plus = cplx(static_cast<double>(p.real()), static_cast<double>(p.imag()));
    minus = cplx(static_cast<double>(m.real()), static_cast<double>(m.imag()));
    noise = static_cast<double>(ck * magnitude * std::numeric_limits<Real>::epsilon());
  }
};

struct LFunction::Evaluator {
  std::unique_ptr<Afe<double>> lo;
  std::unique_ptr<Afe<quad>> hi;
  std::size_t available = 0;
  double step = 0;
  double u = 0;
  double ck = 0;
};

LFunction::LFunction(const NewformData& form, Sign sign, EngineOptions options)
    : sign_(sign == Sign::unknown ? form.sign : sign),
      level_(form.level),
      weight_(form.weight),
      options_(options) {
  options_.precision.validate();
  check_weight(form.weight);
  if (form.level < 1) throw DomainError("level must be >= 1");
  if (sign_ == Sign::unknown) throw DomainError("root number unknown; run detect_sign first");
  if (form.coeffs.empty()) throw DomainError("form has no coefficients");
  if (!(options_.term_factor >= 1)) throw DomainError("term_factor must be >= 1");

  auto ev = std::make_shared<Evaluator>();
  ev->available = form.terms();
  ev->step = 2 * std::numbers::pi / std::sqrt(static_cast<double>(form.level));
  ev->u = (form.weight - 1) / 2.0;
  ev->ck = c_k_value(form.weight);
  if (options_.precision.uses_quad())
    ev->hi = std::make_unique<Afe<quad>>(form);
  else
    ev->lo = std::make_unique<Afe<double>>(form);
  eval_ = std::move(ev);
}

LFunction::LFunction(const NewformData& form, EngineOptions options)
    : LFunction(form, form.sign, options) {}

std::size_t LFunction::required_terms(double abs_im_s, double split) const {
  if (!(split > 0)) throw DomainError("split point must be positive");
  const double widen = std::max(split, 1 / split);
  const double height = std::abs(abs_im_s) + eval_->u + 40;
  return static_cast<std::size_t>(std::ceil(widen * height / eval_->step));
}

LFunction::Sums LFunction::sums(cplx s, double split) const {
  const Evaluator& ev = *eval_;
  std::size_t terms = options_.fixed_terms;
  if (terms == 0) {
    const double scaled = options_.term_factor * required_terms(s.imag(), split);
    terms = static_cast<std::size_t>(std::ceil(scaled));
  } else if (!(split > 0)) {
    throw DomainError("split point must be positive");
  }
  if (terms > ev.available) {
    std::ostringstream msg;
    msg << "evaluation at Im s = " << s.imag() << " needs more coefficients than the "
        << ev.available << " available";
    throw InsufficientTermsError(msg.str(), terms);
  }

  Sums out;
  out.terms = terms;
  if (ev.hi)
    ev.hi->sums(s, split, terms, out.plus, out.minus, out.noise);
  else
    ev.lo->sums(s, split, terms, out.plus, out.minus, out.noise);

  // Dropped terms n > M with |a_n| <= d(n) <= 2 sqrt(n).  Summed until the
  // terms become negligible, then closed with a geometric remainder.
  const double sigma = s.real();
  double tail = 0;
  double prev = 0;
  for (std::size_t n = terms + 1; n < terms + 10000000; ++n) {
    const double x = ev.step * static_cast<double>(n);
    const double lx = std::log(x);
    const double t1 = -sigma * lx + log_incomplete_gamma_bound(sigma + ev.u, x * split);
    const double t2 = (sigma - 1) * lx + log_incomplete_gamma_bound(1 - sigma + ev.u, x / split);
    const double term =
        2 * std::sqrt(static_cast<double>(n)) * ev.ck * (std::exp(t1) + std::exp(t2));
    tail += term;
    if (n > terms + 2 && prev > 0) {
      const double ratio = term / prev;
      if (ratio < 0.95 && term <= 1e-18 * tail) {
        tail += term * ratio / (1 - ratio);
        break;
      }
    }
    if (term == 0) break;
    prev = term;
  }
  out.tail = tail;
  return out;
}

LambdaValue LFunction::lambda(cplx s, double split) const {
  const Sums r = sums(s, split);
  return {to_int(sign_) > 0 ? r.plus : r.minus, r.tail, r.terms};
}

namespace {

ZValue rotate(const LFunction::Sums& r, int w) {
  const cplx value = w > 0 ? r.plus : r.minus;
  ZValue z;
  z.tail = r.tail;
  if (w > 0) {
    z.value = value.real();
    z.discarded = std::abs(value.imag());
  } else {
    z.value = value.imag();
    z.discarded = std::abs(value.real());
  }
  return z;
}

}  // namespace

ZValue LFunction::z_value(double t) const {
  const Sums r = sums({0.5, t}, kRealnessSplit);
  // High on the line Lambda is exponentially smaller than the individual AFE
  // terms; once the rounding floor reaches the natural size N^{1/4}
  // |gamma_f(1/2 + it)| of Lambda, sign changes of Z stop meaning anything.
  const double scale = std::pow(static_cast<double>(level_), 0.25) *
                       std::abs(gamma_factor(weight_, {0.5, t}));
  if (r.noise > kPrecisionMargin * scale) {
    std::ostringstream msg;
    msg << "working precision exhausted at t = " << t << ": rounding floor " << r.noise
        << " against |Lambda| scale " << scale;
    throw ConsistencyError(msg.str());
  }
  const ZValue z = rotate(r, to_int(sign_));
  const double allowed = std::max(z.tail, 1e-9 * (1 + std::abs(z.value)));
  if (z.discarded > allowed) {
    std::ostringstream msg;
    msg << "Z(" << t << ") is not real: discarded component " << z.discarded
        << " exceeds " << allowed;
    throw ConsistencyError(msg.str());
  }
  return z;
}

double phase_theta(std::uint64_t level, int weight, double t) {
  check_weight(weight);
  if (level < 1) throw DomainError("level must be >= 1");
  const cplx lg = special::log_gamma<double>(cplx(weight / 2.0, t));
  return lg.imag() - t * std::log(2 * std::numbers::pi) +
         0.5 * t * std::log(static_cast<double>(level));
}

double phase_theta_derivative(std::uint64_t level, int weight, double t) {
  check_weight(weight);
  if (level < 1) throw DomainError("level must be >= 1");
  const cplx psi = special::digamma<double>(cplx(weight / 2.0, t));
  return psi.real() - std::log(2 * std::numbers::pi) +
         0.5 * std::log(static_cast<double>(level));
}

double LFunction::theta(double t) const { return phase_theta(level_, weight_, t); }

double LFunction::theta_derivative(double t) const {
  return phase_theta_derivative(level_, weight_, t);
}

cplx lambda_value(const NewformData& form, cplx s, const EngineOptions& options) {
  return LFunction(form, options).lambda(s).value;
}

double z_function(const NewformData& form, double t, const EngineOptions& options) {
  return LFunction(form, options).z(t);
}

SignDetection detect_sign(const NewformData& form, const EngineOptions& options) {
  const LFunction lf(form, Sign::plus, options);
  SignDetection out;
  for (double t : {0.5, 1.0, 1.7, 2.3}) {
    const LFunction::Sums r = lf.sums({0.5, t}, kRealnessSplit);
    const ZValue plus = rotate(r, +1);
    const ZValue minus = rotate(r, -1);
    out.residual_plus += plus.discarded / std::max(std::hypot(plus.value, plus.discarded), 1e-300);
    out.residual_minus +=
        minus.discarded / std::max(std::hypot(minus.value, minus.discarded), 1e-300);
  }
  const double tiny = std::numeric_limits<double>::min();
  const double lo = std::max(std::min(out.residual_plus, out.residual_minus), tiny);
  const double hi = std::max(out.residual_plus, out.residual_minus);
  if (hi / lo <= 1e3) {
    std::ostringstream msg;
    msg << "root number is ambiguous: realness residuals " << out.residual_plus << " (w=+1) and "
        << out.residual_minus << " (w=-1)";
    throw ConsistencyError(msg.str());
  }
  out.sign = out.residual_plus < out.residual_minus ? Sign::plus : Sign::minus;
  return out;
}

}  // namespace mfzero

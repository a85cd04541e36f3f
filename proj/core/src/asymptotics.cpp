#include "randtest/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "randtest/binomial.hpp"
#include "randtest/scalar_functions.hpp"
#include "internal.hpp"

namespace randtest {
namespace {

using detail::ceil_snap;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_s(double s) {
  if (!(s >= 0.0 && s < 1.0)) throw std::domain_error("s must lie in [0, 1)");
}

void check_open_prob(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in (0, 1)");
  }
}

}  // namespace

RegimeSpec RegimeSpec::linear_fixed(double s, double delta) {
  RegimeSpec spec;
  spec.kind = Kind::linear_fixed_delta;
  spec.s = s;
  spec.delta = delta;
  return spec;
}

RegimeSpec RegimeSpec::linear_exponential(double s, double r) {
  RegimeSpec spec;
  spec.kind = Kind::linear_exponential_delta;
  spec.s = s;
  spec.r = r;
  return spec;
}

RegimeSpec RegimeSpec::constant_fixed(std::int64_t k0, double delta) {
  RegimeSpec spec;
  spec.kind = Kind::constant_fixed_delta;
  spec.k0 = k0;
  spec.delta = delta;
  return spec;
}

RegimeSpec RegimeSpec::constant_exponential(std::int64_t k0, double r) {
  RegimeSpec spec;
  spec.kind = Kind::constant_exponential_delta;
  spec.k0 = k0;
  spec.r = r;
  return spec;
}

double coeff_C(double lambda, double s, double delta) {
  check_open_prob(lambda, "lambda");
  check_s(s);
  check_open_prob(delta, "delta");
  const double nu = 1.0 - lambda;
  // fused form: Phi^{-1}(delta) psi(delta) = phi(Phi^{-1}(delta))/delta,
  // continuous through delta = 1/2
  const double fused = psi_times_quantile(delta);
  const double q = normal_quantile(delta);
  return std::sqrt(s) * (1.0 - s) *
         (std::sqrt(nu / lambda) * fused -
          q * std::sqrt(lambda / nu) / (1.0 - s));
}

double coeff_C_min(double s, double delta) {
  check_s(s);
  check_open_prob(delta, "delta");
  if (delta > 0.5) return kNegInf;
  const double q = normal_quantile(delta);
  return 2.0 * std::sqrt(-s * (1.0 - s) * q * normal_pdf(q) / delta);
}

double lambda_opt_linear(double s, double delta) {
  check_s(s);
  check_open_prob(delta, "delta");
  if (delta == 0.5) return 1.0;  // infimum approached as lambda -> 1
  if (delta > 0.5) {
    throw std::domain_error("minimizer requires delta <= 1/2");
  }
  const double ps = psi(delta);  // negative for delta < 1/2
  return (1.0 - s) * ps / ((1.0 - s) * ps - 1.0);
}

double rate_limit_E(double lambda, double s, double r) {
  check_open_prob(lambda, "lambda");
  check_s(s);
  if (!(r > 0.0)) throw std::domain_error("r must be positive");
  const double nu = 1.0 - lambda;
  const double threshold = rel_entropy(s * nu, nu);  // D(0||nu) = ln 1/lambda at s=0
  if (r > threshold) return 1.0;
  const double t = t_div(nu * s / r, nu).value;
  const double e = (r * t - nu * s) / (lambda - nu * s + nu * r * t);
  return std::clamp(e, s, 1.0);
}

double rate_inverse_E(double lambda, double r, double eps) {
  check_open_prob(lambda, "lambda");
  check_open_prob(eps, "eps");
  if (!(r > 0.0)) throw std::domain_error("r must be positive");
  const double e0 = rate_limit_E(lambda, 0.0, r);
  if (eps < e0) {
    throw std::domain_error("eps below E at s=0; rate too large");
  }
  // s ranges over [0, s0] with D(s0 nu || nu) = r, where E reaches 1
  const double nu = 1.0 - lambda;
  double s_hi = 1.0 - 1e-12;
  const double log_lambda_inv = -std::log(lambda);
  if (r < log_lambda_inv) {
    s_hi = std::min(s_hi, s_div(nu, r).value / nu);
  }
  double lo = 0.0;
  double hi = s_hi;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (rate_limit_E(lambda, mid, r) < eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double rate_for_eps(double lambda, double s, double eps) {
  check_open_prob(lambda, "lambda");
  check_s(s);
  if (!(eps > s && eps < 1.0)) {
    throw std::domain_error("eps must lie in (s, 1)");
  }
  const double nu = 1.0 - lambda;
  const double r_hi = rel_entropy(s * nu, nu);  // E = 1 there
  double lo = 1e-300;
  double hi = r_hi;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (rate_limit_E(lambda, s, mid) < eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double coeff_G(std::int64_t l, double delta, double lambda) {
  if (l < 0) throw std::domain_error("l must be a nonnegative integer");
  check_open_prob(delta, "delta");
  check_open_prob(lambda, "lambda");
  const double nu = 1.0 - lambda;
  const auto zs = z_star(l, delta, lambda);
  const double b_lo = std::exp(log_binom_cdf(zs.z_star_lower, l, nu));
  const double b_up = std::exp(log_binom_cdf(zs.z_star_upper, l, nu));
  // the B_{z*-2,l} factor is multiplied by z*-1, so its value is moot there
  const double b_lo_prev =
      zs.z_star_lower >= 1
          ? std::exp(log_binom_cdf(zs.z_star_lower - 1, l, nu))
          : 1.0;
  const double delta_gap = delta_zl(zs.z_star_lower, l, lambda);
  const double num = (b_lo - delta) * double(zs.z_star_upper) * b_lo +
                     (delta - b_up) * double(zs.z_star_lower) * b_lo_prev;
  return num / (delta * delta_gap);
}

double Expansion::eval(double n) const {
  switch (order) {
    case Order::inv_sqrt_n: return leading + first_order / std::sqrt(n);
    case Order::inv_n: return leading + first_order / n;
    case Order::limit: return leading;
  }
  return leading;
}

Expansion ucl_asymptotic(const RegimeSpec& spec, double lambda, TestMode mode,
                         double upsilon_n) {
  if (mode == TestMode::randomized) {
    check_open_prob(lambda, "lambda");
  }
  const double s = spec.s;
  const double delta = spec.delta;
  const double r = spec.r;
  switch (spec.kind) {
    case RegimeSpec::Kind::linear_fixed_delta: {
      check_s(s);
      check_open_prob(delta, "delta");
      switch (mode) {
        case TestMode::randomized:
          return {s, coeff_C(lambda, s, delta), Expansion::Order::inv_sqrt_n};
        case TestMode::iid:
          return {s, -normal_quantile(delta) * std::sqrt(s * (1.0 - s)),
                  Expansion::Order::inv_sqrt_n};
        case TestMode::deterministic_lambda0: {
          if (s > delta) return {1.0, 0.0, Expansion::Order::limit};
          const double c1 = (1.0 - s + s * s - delta) / (delta * (1.0 - s)) +
                            upsilon_n / delta;
          return {s / delta, c1, Expansion::Order::inv_n};
        }
      }
      break;
    }
    case RegimeSpec::Kind::linear_exponential_delta: {
      check_s(s);
      if (!(r > 0.0)) throw std::domain_error("r must be positive");
      switch (mode) {
        case TestMode::randomized:
          return {rate_limit_E(lambda, s, r), 0.0, Expansion::Order::limit};
        case TestMode::iid:
          return {eps_div(s, r).value, 0.0, Expansion::Order::limit};
        case TestMode::deterministic_lambda0:
          return {1.0, 0.0, Expansion::Order::limit};
      }
      break;
    }
    case RegimeSpec::Kind::constant_fixed_delta: {
      if (spec.k0 < 0) throw std::domain_error("k0 must be >= 0");
      check_open_prob(delta, "delta");
      switch (mode) {
        case TestMode::randomized: {
          const std::int64_t l = ceil_snap((1.0 - lambda) * double(spec.k0));
          return {0.0, coeff_G(l, delta, lambda), Expansion::Order::inv_n};
        }
        case TestMode::iid:
          return {0.0, t_pois(spec.k0, delta).value, Expansion::Order::inv_n};
        case TestMode::deterministic_lambda0:
          return {0.0, (double(spec.k0) + 1.0 - delta) / delta,
                  Expansion::Order::inv_n};
      }
      break;
    }
    case RegimeSpec::Kind::constant_exponential_delta: {
      if (spec.k0 < 0) throw std::domain_error("k0 must be >= 0");
      if (!(r > 0.0)) throw std::domain_error("r must be positive");
      switch (mode) {
        case TestMode::randomized: {
          const double log_lambda_inv = -std::log(lambda);
          if (r > log_lambda_inv) return {1.0, 0.0, Expansion::Order::limit};
          return {r / (r + lambda * (log_lambda_inv - r)), 0.0,
                  Expansion::Order::limit};
        }
        case TestMode::iid:
          return {-std::expm1(-r), 0.0, Expansion::Order::limit};
        case TestMode::deterministic_lambda0:
          return {1.0, 0.0, Expansion::Order::limit};
      }
      break;
    }
  }
  throw std::domain_error("incompatible regime/mode combination");
}

}  // namespace randtest

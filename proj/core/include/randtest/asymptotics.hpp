#pragma once

#include <cstdint>

namespace randtest {

// Asymptotic regime descriptor.  Linear: failure budget grows as
// ceil(s nu n) (randomized) or ceil(s n) (iid / lambda = 0).  Constant: the
// budget is fixed from k0.  delta is either held fixed or decays as
// exp(-r n).
struct RegimeSpec {
  enum class Kind {
    linear_fixed_delta,
    linear_exponential_delta,
    constant_fixed_delta,
    constant_exponential_delta,
  };
  Kind kind = Kind::linear_fixed_delta;
  double s = 0.0;
  std::int64_t k0 = 0;
  double r = 0.0;
  double delta = 0.0;

  static RegimeSpec linear_fixed(double s, double delta);
  static RegimeSpec linear_exponential(double s, double r);
  static RegimeSpec constant_fixed(std::int64_t k0, double delta);
  static RegimeSpec constant_exponential(std::int64_t k0, double r);
};

enum class TestMode { randomized, deterministic_lambda0, iid };

// sqrt(n)-scale coefficient of the linear regime.
double coeff_C(double lambda, double s, double delta);
// min over lambda of coeff_C; -inf sentinel for delta > 1/2, where the
// infimum is not attained (lambda -> 1).
double coeff_C_min(double s, double delta);
double lambda_opt_linear(double s, double delta);

// Exponential-delta limit E_{lambda,s}(r) in the linear regime, clamped to 1
// for r > D(s nu || nu); increasing in both s and r.
double rate_limit_E(double lambda, double s, double r);
// Inverse in s at fixed (lambda, r); requires eps >= E_{lambda,0}(r).
double rate_inverse_E(double lambda, double r, double eps);
// Inverse in r at fixed (lambda, s); requires s < eps < 1.
double rate_for_eps(double lambda, double s, double eps);

// 1/n-scale coefficient of the constant regime.
double coeff_G(std::int64_t l, double delta, double lambda);

// Leading expansion of the upper confidence limit.  first_order scales with
// 1/sqrt(n) or 1/n; exponential-delta regimes carry the limit constant only.
struct Expansion {
  enum class Order { inv_sqrt_n, inv_n, limit };
  double leading = 0.0;
  double first_order = 0.0;
  Order order = Order::limit;
  double eval(double n) const;
};

// upsilon_n = ceil(s n) - s n enters only the deterministic linear-fixed
// expansion and depends on the caller's n, so it is supplied explicitly.
Expansion ucl_asymptotic(const RegimeSpec& spec, double lambda, TestMode mode,
                         double upsilon_n = 0.0);

}  // namespace randtest

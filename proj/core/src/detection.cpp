#include "randtest/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "randtest/scalar_functions.hpp"

namespace randtest {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_theta0(double theta0) {
  if (!(theta0 > 0.0 && theta0 < 1.0)) {
    throw std::domain_error("theta0 must lie in (0, 1)");
  }
}

void check_open_prob(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in (0, 1)");
  }
}

}  // namespace

CubicCoefficients detection_cubic_coefficients(double theta0, double delta,
                                               double gap) {
  check_theta0(theta0);
  check_open_prob(delta, "delta");
  const double q = normal_quantile(delta);
  CubicCoefficients c;
  c.alpha = q;
  c.beta = -psi_times_quantile(delta) * (1.0 - theta0);
  c.gamma = gap / std::sqrt(theta0);
  return c;
}

double detection_kappa(double theta0, double delta, double gap,
                       double lambda) {
  check_open_prob(lambda, "lambda");
  const auto c = detection_cubic_coefficients(theta0, delta, gap);
  const double sl = std::sqrt(lambda);
  const double num = c.alpha * sl + c.beta * (1.0 - lambda) / sl +
                     c.gamma * std::sqrt(1.0 - lambda);
  return num / std::sqrt(1.0 - theta0 * (1.0 - lambda));
}

double detect_threshold(const DetectionSetting& setting, TestMode mode) {
  check_theta0(setting.theta0);
  check_open_prob(setting.delta, "delta");
  const double gap = setting.e - setting.t;
  switch (mode) {
    case TestMode::deterministic_lambda0:
      return kNegInf;
    case TestMode::iid:
      return gap / std::sqrt(setting.theta0 * (1.0 - setting.theta0)) +
             normal_quantile(setting.delta);
    case TestMode::randomized: {
      check_open_prob(setting.lambda, "lambda");
      const double nu = 1.0 - setting.lambda;
      const double c = coeff_C(setting.lambda, setting.theta0, setting.delta);
      return std::sqrt(nu) * (gap - c) /
             std::sqrt(setting.theta0 * (1.0 - setting.theta0 * nu));
    }
  }
  throw std::domain_error("unknown detection mode");
}

double detect_prob(const DetectionSetting& setting, TestMode mode) {
  if (mode == TestMode::deterministic_lambda0) return 0.0;
  return normal_cdf(detect_threshold(setting, mode));
}

double required_gap(double theta0, double delta, double lambda, double p0) {
  check_theta0(theta0);
  check_open_prob(delta, "delta");
  check_open_prob(lambda, "lambda");
  check_open_prob(p0, "p0");
  const double nu = 1.0 - lambda;
  return coeff_C(lambda, theta0, delta) +
         std::sqrt(theta0 * (1.0 - theta0 * nu)) / std::sqrt(nu) *
             normal_quantile(p0);
}

OptimalLambda optimal_lambda_detection(double theta0, double gap,
                                       double delta) {
  check_theta0(theta0);
  if (!(gap > 0.0)) throw std::domain_error("gap must be positive");
  if (!(delta > 0.0 && delta < 0.5)) {
    throw std::domain_error("optimal lambda requires delta in (0, 1/2)");
  }
  const double ps = psi(delta);
  const double q = normal_quantile(delta);
  const double a2 = q * (1.0 - theta0) * q * (1.0 - theta0);
  const double rhs_coeff = gap * gap / theta0;
  // f(x) = f1(x) + f2(x): negative at 0, positive at 1, one sign change
  auto f = [&](double x) {
    const double lin = (1.0 + (1.0 + theta0) * ps) * x + (1.0 - theta0) * ps;
    const double f2 = (x - 1.0) * a2 * lin * lin;
    const double f1 = rhs_coeff * x * x * x;
    return f1 + f2;
  };
  double lo = 1e-12;
  double hi = 1.0 - 1e-12;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double lambda0 = 0.5 * (lo + hi);
  return {lambda0, detection_kappa(theta0, delta, gap, lambda0)};
}

}  // namespace randtest

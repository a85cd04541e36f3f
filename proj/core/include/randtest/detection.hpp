#pragma once

#include <optional>

#include "randtest/asymptotics.hpp"

namespace randtest {

// Detection analysis under iid truth theta0 + t/sqrt(n) against the target
// eps = theta0 + e/sqrt(n); all quantities are n -> infinity limits.
struct DetectionSetting {
  double theta0 = 0.0;
  double e = 0.0;
  double t = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
  std::optional<double> p0;
};

// alpha = Phi^{-1}(delta), beta = -Phi^{-1}(delta) psi(delta) (1 - theta0),
// gamma = gap / sqrt(theta0).
struct CubicCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};
CubicCoefficients detection_cubic_coefficients(double theta0, double delta,
                                               double gap);

// kappa(lambda): the standardized detection threshold as a function of the
// randomization parameter, at gap = e - t.
double detection_kappa(double theta0, double delta, double gap, double lambda);

// Limiting standardized threshold; -inf for the deterministic test, whose
// detection probability vanishes.
double detect_threshold(const DetectionSetting& setting, TestMode mode);
double detect_prob(const DetectionSetting& setting, TestMode mode);

// Minimum gap e - t achieving detection probability p0.
double required_gap(double theta0, double delta, double lambda, double p0);

// The unique stationary point of kappa in (0, 1) for delta < 1/2, located by
// bracketed bisection of the cubic.
struct OptimalLambda {
  double lambda0 = 0.0;
  double kappa_value = 0.0;
};
OptimalLambda optimal_lambda_detection(double theta0, double gap, double delta);

}  // namespace randtest

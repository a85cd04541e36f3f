#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

#include "randtest/asymptotics.hpp"

namespace randtest {

class infeasible_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PlanResult {
  std::int64_t value = 0;
  enum class How { exact_search, asymptotic } how = How::exact_search;
  // (value at the returned point, value one step toward infeasibility);
  // absent when the adjacent point is outside the domain.
  std::optional<std::pair<double, double>> certificate;
};
const char* plan_method_name(PlanResult::How how);

// Minimum n with ucl(l, n, delta) <= eps in the constant regime; binary
// search is valid because the limit is nonincreasing in n.
PlanResult min_n_constant_exact(std::int64_t l, double eps, double delta,
                                double lambda);
PlanResult min_n_iid_constant_exact(std::int64_t k, double eps, double delta);

// Minimum n in the linear regime, where the budget ceil(s nu n) moves with
// n; asymptotic warm start widened +/-50% with a full-scan fallback.
PlanResult min_n_linear_exact(double s, double eps, double delta,
                              double lambda);
PlanResult min_n_iid_linear_exact(double s, double eps, double delta);

// Maximum failure budget l with ucl <= eps; empty when even l = 0 fails.
std::optional<PlanResult> max_failures_exact(std::int64_t n, double eps,
                                             double delta, double lambda,
                                             TestMode mode);

// Leading-order planning formulas.
namespace plan_asym {

double n_linear_randomized(double s, double eps, double delta, double lambda);
double n_linear_min_over_lambda(double s, double eps, double delta);
double n_linear_iid(double s, double eps, double delta);
double n_linear_randomized_small_delta(double s, double eps, double delta,
                                       double lambda);
double n_linear_iid_small_delta(double s, double eps, double delta);

double n_constant_lambda0(std::int64_t k0, double eps, double delta);
double n_constant_randomized(std::int64_t k0, double eps, double delta,
                             double lambda);
double n_constant_iid(std::int64_t k0, double eps, double delta);
double n_constant_lambda0_small_delta(std::int64_t k0, double eps,
                                      double delta);
double n_constant_randomized_small_delta(double eps, double delta,
                                         double lambda);
double n_constant_iid_small_delta(double eps, double delta);

double budget_linear_lambda0(std::int64_t n, double eps, double delta);
double budget_linear_randomized(std::int64_t n, double eps, double delta,
                                double lambda);
double budget_linear_iid(std::int64_t n, double eps, double delta);
double budget_rate_randomized(std::int64_t n, double eps, double r,
                              double lambda);
double budget_rate_iid(std::int64_t n, double eps, double r);

// Double-limit sample cost eps N / ln(1/delta) -> 1/(lambda ln(1/lambda));
// minimized at lambda = 1/e where it equals e.
double sample_cost_constant_small_limits(double lambda);

}  // namespace plan_asym

}  // namespace randtest

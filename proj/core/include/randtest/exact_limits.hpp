#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace randtest {

// A randomized test instance: n observations, failure budget l, significance
// level delta, randomization parameter lambda.
struct TestDesign {
  std::int64_t n = 0;
  std::int64_t l = 0;
  double delta = 0.0;
  double lambda = 0.0;
  void validate() const;
};

// One vertex (h_z, g_z) of the achievable region: h = Q(L<=l | Z=z),
// g = Q(Y_{n+1}=0, L<=l | Z=z).
struct RegionPoint {
  std::int64_t z = 0;
  double h = 0.0;
  double g = 0.0;
};

enum class Method {
  region_exact,
  closed_form_lambda0,
  iid_bisection,
  oracle_lp,
  asymptotic,
};
const char* method_name(Method m);

struct ConfidenceBound {
  double epsilon_bar = 0.0;  // upper confidence limit
  double complement = 0.0;   // 1 - epsilon_bar
  Method method = Method::region_exact;
  std::optional<std::int64_t> z_hat;  // active vertex, when one exists
};

// All n+2 region vertices for z = 0..n+1.
std::vector<RegionPoint> region_points(const TestDesign& design);

// log h_z and log g_z evaluated on demand; g_{n+1} = 0 maps to -inf.
// Valid for 0 <= z <= n+1 and lambda in [0, 1).
double log_region_h(std::int64_t n, std::int64_t l, double lambda,
                    std::int64_t z);
double log_region_g(std::int64_t n, std::int64_t l, double lambda,
                    std::int64_t z);

// Exact upper confidence limit.  The log_delta entry point supports
// significance levels far below the smallest positive double, e.g.
// delta = exp(-r n) at large n.
ConfidenceBound ucl_exact(const TestDesign& design);
ConfidenceBound ucl_exact_log(std::int64_t n, std::int64_t l,
                              double log_delta, double lambda);

// iid baseline: max{theta : B_{n,k}(theta) >= delta} by bisection.
ConfidenceBound ucl_iid_exact(std::int64_t k, std::int64_t n, double delta);
ConfidenceBound ucl_iid_exact_log(std::int64_t k, std::int64_t n,
                                  double log_delta);

// The l = 0 schedule: delta_z = ((n+1-z) lambda^z + z lambda^{z-1}) / (n+1)
// pairs with the exact limit z / (z + (n-z+1) lambda).
struct ScheduleEntry {
  double delta_z = 0.0;
  double ucl = 0.0;
};
ScheduleEntry delta_z_schedule(std::int64_t n, double lambda, std::int64_t z);

// Analytic bracket for the complement 1 - epsilon_bar (vertex ratios at the
// critical indices plus their algebraic relaxations).
struct SandwichBounds {
  double complement_lower = 0.0;
  double complement_upper = 1.0;
};
SandwichBounds ucl_sandwich(const TestDesign& design);

}  // namespace randtest

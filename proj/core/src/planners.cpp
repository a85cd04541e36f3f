#include "randtest/planners.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "randtest/binomial.hpp"
#include "randtest/exact_limits.hpp"
#include "randtest/scalar_functions.hpp"
#include "internal.hpp"

namespace randtest {
namespace {

using detail::ceil_snap;

constexpr std::int64_t kScanCap = 10'000'000;

void check_open_prob(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in (0, 1)");
  }
}

double eps_bar_constant(std::int64_t l, std::int64_t n, double delta,
                        double lambda) {
  return ucl_exact({n, l, delta, lambda}).epsilon_bar;
}

PlanResult from_boundary(std::int64_t value, double at_value,
                         std::optional<double> at_adjacent) {
  PlanResult res;
  res.value = value;
  res.how = PlanResult::How::exact_search;
  if (at_adjacent) {
    res.certificate = std::make_pair(at_value, *at_adjacent);
  }
  return res;
}

// Shared by the constant-regime planners: minimal n >= n_min with
// eval(n) <= eps, relying on eval nonincreasing in n.
PlanResult min_n_monotone(std::int64_t n_min, double eps,
                          const std::function<double(std::int64_t)>& eval,
                          std::int64_t bracket_hint) {
  if (eval(n_min) <= eps) {
    return from_boundary(n_min, eval(n_min), std::nullopt);
  }
  std::int64_t lo = n_min;  // known infeasible
  std::int64_t hi = 0;
  if (bracket_hint > n_min && eval(bracket_hint) <= eps) {
    hi = bracket_hint;
  } else {
    std::int64_t step = 1;
    std::int64_t cand = n_min + step;
    int doublings = 0;
    while (eval(cand) > eps) {
      lo = cand;
      step *= 2;
      cand = n_min + step;
      if (++doublings > 60) {
        throw infeasible_error("no sample size within 2^60 of the minimum satisfies the target");
      }
    }
    hi = cand;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (eval(mid) <= eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return from_boundary(hi, eval(hi), eval(hi - 1));
}

}  // namespace

const char* plan_method_name(PlanResult::How how) {
  return how == PlanResult::How::exact_search ? "exact-search" : "asymptotic";
}

PlanResult min_n_constant_exact(std::int64_t l, double eps, double delta,
                                double lambda) {
  if (l < 0) throw std::domain_error("l must be a nonnegative integer");
  check_open_prob(eps, "eps");
  check_open_prob(delta, "delta");
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw std::domain_error("lambda must lie in [0, 1)");
  }
  std::int64_t hint = 0;
  if (lambda > 0.0 && delta <= 0.5) {
    // upper bracket N < (z* - l + 1 + sqrt(lambda l)) / (lambda eps)
    const auto zs = z_star(l, delta, lambda);
    const double bound = (double(zs.z_star_upper - l) + 1.0 +
                          std::sqrt(lambda * double(l))) /
                         (lambda * eps);
    hint = std::int64_t(std::ceil(bound)) + 1;
  }
  auto eval = [&](std::int64_t n) {
    return eps_bar_constant(l, n, delta, lambda);
  };
  return min_n_monotone(l + 1, eps, eval, hint);
}

PlanResult min_n_iid_constant_exact(std::int64_t k, double eps, double delta) {
  if (k < 0) throw std::domain_error("k must be a nonnegative integer");
  check_open_prob(eps, "eps");
  check_open_prob(delta, "delta");
  auto eval = [&](std::int64_t n) {
    return ucl_iid_exact(k, n, delta).epsilon_bar;
  };
  return min_n_monotone(k + 1, eps, eval, 0);
}

namespace {

// Linear regime: l moves with n, so minimality cannot come from a binary
// search.  Scan upward, skipping [n_lo, start) only when the warm start is
// verified infeasible at start.
PlanResult min_n_linear_scan(const std::function<std::int64_t(std::int64_t)>& budget,
                             const std::function<double(std::int64_t, std::int64_t)>& eval,
                             double eps, double warm_n) {
  std::int64_t n_lo = 1;
  while (n_lo < kScanCap && budget(n_lo) > n_lo - 1) ++n_lo;
  std::int64_t begin = n_lo;
  if (warm_n >= 4.0) {
    const std::int64_t start =
        std::max(n_lo, std::int64_t(std::floor(0.5 * warm_n)));
    if (start > n_lo && eval(budget(start), start) > eps) {
      begin = start;
    }
  }
  std::optional<double> prev;
  for (std::int64_t n = begin; n <= kScanCap; ++n) {
    const std::int64_t l = budget(n);
    if (l > n - 1) {
      prev.reset();
      continue;
    }
    const double v = eval(l, n);
    if (v <= eps) {
      if (!prev && n > n_lo) {
        const std::int64_t lp = budget(n - 1);
        if (lp <= n - 2) prev = eval(lp, n - 1);
      }
      return from_boundary(n, v, prev);
    }
    prev = v;
  }
  throw infeasible_error("no sample size up to 1e7 satisfies the target");
}

}  // namespace

PlanResult min_n_linear_exact(double s, double eps, double delta,
                              double lambda) {
  if (!(s >= 0.0 && s < 1.0)) throw std::domain_error("s must lie in [0, 1)");
  check_open_prob(eps, "eps");
  check_open_prob(delta, "delta");
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw std::domain_error("lambda must lie in [0, 1)");
  }
  if (!(eps > s)) {
    if (delta <= 0.5) {
      throw infeasible_error("eps <= s is unattainable in the linear regime");
    }
    throw std::domain_error("eps must exceed s");
  }
  const double nu = 1.0 - lambda;
  auto budget = [=](std::int64_t n) { return ceil_snap(nu * s * double(n)); };
  auto eval = [=](std::int64_t l, std::int64_t n) {
    return ucl_exact({n, l, delta, lambda}).epsilon_bar;
  };
  double warm = 0.0;
  if (lambda > 0.0 && delta <= 0.5) {
    const double c = coeff_C(lambda, s, delta);
    warm = (c / (eps - s)) * (c / (eps - s));
  }
  return min_n_linear_scan(budget, eval, eps, warm);
}

PlanResult min_n_iid_linear_exact(double s, double eps, double delta) {
  if (!(s >= 0.0 && s < 1.0)) throw std::domain_error("s must lie in [0, 1)");
  check_open_prob(eps, "eps");
  check_open_prob(delta, "delta");
  if (!(eps > s)) {
    if (delta <= 0.5) {
      throw infeasible_error("eps <= s is unattainable in the linear regime");
    }
    throw std::domain_error("eps must exceed s");
  }
  auto budget = [=](std::int64_t n) { return ceil_snap(s * double(n)); };
  auto eval = [=](std::int64_t k, std::int64_t n) {
    return ucl_iid_exact(k, n, delta).epsilon_bar;
  };
  double warm = 0.0;
  if (delta <= 0.5) {
    const double q = normal_quantile(delta);
    warm = q * q * s * (1.0 - s) / ((eps - s) * (eps - s));
  }
  return min_n_linear_scan(budget, eval, eps, warm);
}

std::optional<PlanResult> max_failures_exact(std::int64_t n, double eps,
                                             double delta, double lambda,
                                             TestMode mode) {
  if (n < 1) throw std::domain_error("n must be a positive integer");
  check_open_prob(eps, "eps");
  check_open_prob(delta, "delta");
  if (mode == TestMode::deterministic_lambda0) {
    throw std::domain_error("use randomized mode with lambda = 0");
  }
  auto eval = [&](std::int64_t l) {
    return mode == TestMode::iid
               ? ucl_iid_exact(l, n, delta).epsilon_bar
               : ucl_exact({n, l, delta, lambda}).epsilon_bar;
  };
  if (eval(0) > eps) return std::nullopt;
  // eps_bar is nondecreasing in l
  std::int64_t lo = 0;  // known feasible
  std::int64_t hi = n - 1;
  if (eval(hi) <= eps) {
    return from_boundary(hi, eval(hi), std::nullopt);
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (eval(mid) <= eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return from_boundary(lo, eval(lo), eval(lo + 1));
}

namespace plan_asym {

double n_linear_randomized(double s, double eps, double delta, double lambda) {
  const double c = coeff_C(lambda, s, delta);
  return c * c / ((eps - s) * (eps - s));
}

double n_linear_min_over_lambda(double s, double eps, double delta) {
  const double c = coeff_C_min(s, delta);
  return c * c / ((eps - s) * (eps - s));
}

double n_linear_iid(double s, double eps, double delta) {
  const double q = normal_quantile(delta);
  return q * q * s * (1.0 - s) / ((eps - s) * (eps - s));
}

double n_linear_randomized_small_delta(double s, double eps, double delta,
                                       double lambda) {
  return std::log(1.0 / delta) / rate_for_eps(lambda, s, eps);
}

double n_linear_iid_small_delta(double s, double eps, double delta) {
  return std::log(1.0 / delta) / rel_entropy(s, eps);
}

double n_constant_lambda0(std::int64_t k0, double eps, double delta) {
  return (double(k0) + 1.0 - delta) / (delta * eps);
}

double n_constant_randomized(std::int64_t k0, double eps, double delta,
                             double lambda) {
  const std::int64_t l = ceil_snap((1.0 - lambda) * double(k0));
  return coeff_G(l, delta, lambda) / eps;
}

double n_constant_iid(std::int64_t k0, double eps, double delta) {
  return t_pois(k0, delta).value / eps;
}

double n_constant_lambda0_small_delta(std::int64_t k0, double eps,
                                      double delta) {
  return (double(k0) + 1.0) / (delta * eps);
}

double n_constant_randomized_small_delta(double eps, double delta,
                                         double lambda) {
  const double nu = 1.0 - lambda;
  const double log_lambda_inv = -std::log(lambda);
  return (1.0 - nu * eps) * std::log(1.0 / delta) /
         (lambda * eps * log_lambda_inv);
}

double n_constant_iid_small_delta(double eps, double delta) {
  return std::log(1.0 / delta) / (-std::log1p(-eps));
}

double budget_linear_lambda0(std::int64_t n, double eps, double delta) {
  return delta * eps * double(n) -
         (1.0 - delta - delta * eps + delta * delta * eps * eps) /
             (1.0 - delta * eps);
}

double budget_linear_randomized(std::int64_t n, double eps, double delta,
                                double lambda) {
  const double nu = 1.0 - lambda;
  return eps * nu * double(n) -
         coeff_C(lambda, eps, delta) * nu * std::sqrt(double(n));
}

double budget_linear_iid(std::int64_t n, double eps, double delta) {
  return eps * double(n) + normal_quantile(delta) *
                               std::sqrt(eps * (1.0 - eps)) *
                               std::sqrt(double(n));
}

double budget_rate_randomized(std::int64_t n, double eps, double r,
                              double lambda) {
  const double nu = 1.0 - lambda;
  const double r_max = -lambda * eps * std::log(lambda) / (1.0 - nu * eps);
  if (!(r > 0.0 && r <= r_max)) {
    throw std::domain_error("rate must lie in (0, -lambda eps ln lambda / (1 - nu eps)]");
  }
  return nu * rate_inverse_E(lambda, r, eps) * double(n);
}

double budget_rate_iid(std::int64_t n, double eps, double r) {
  return s_div(eps, r).value * double(n);
}

double sample_cost_constant_small_limits(double lambda) {
  check_open_prob(lambda, "lambda");
  return 1.0 / (lambda * std::log(1.0 / lambda));
}

}  // namespace plan_asym

}  // namespace randtest

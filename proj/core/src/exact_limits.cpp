#include "randtest/exact_limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "randtest/binomial.hpp"

namespace randtest {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double logsumexp2(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

void check_design_ints(std::int64_t n, std::int64_t l) {
  if (n < 1) throw std::domain_error("n must be a positive integer");
  if (l < 0 || l >= n) throw std::domain_error("l must satisfy 0 <= l <= n-1");
}

void check_z_range(std::int64_t n, std::int64_t z) {
  if (z < 0 || z > n + 1) throw std::domain_error("z must lie in [0, n+1]");
}

}  // namespace

void TestDesign::validate() const {
  check_design_ints(n, l);
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::domain_error("delta must lie in (0, 1]");
  }
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw std::domain_error("lambda must lie in [0, 1)");
  }
}

const char* method_name(Method m) {
  switch (m) {
    case Method::region_exact: return "region-exact";
    case Method::closed_form_lambda0: return "closed-form-lambda0";
    case Method::iid_bisection: return "iid-bisection";
    case Method::oracle_lp: return "oracle-lp";
    case Method::asymptotic: return "asymptotic";
  }
  return "unknown";
}

double log_region_h(std::int64_t n, std::int64_t l, double lambda,
                    std::int64_t z) {
  check_design_ints(n, l);
  check_z_range(n, z);
  if (z <= l) return 0.0;
  const double nu = 1.0 - lambda;
  const double lb1 = log_binom_cdf(z, l, nu);
  const double lb0 = log_binom_cdf(z - 1, l, nu);
  const double t1 =
      z == n + 1 ? kNegInf : std::log(double(n - z + 1)) + lb1;
  const double t0 = std::log(double(z)) + lb0;
  return std::min(logsumexp2(t1, t0) - std::log(double(n + 1)), 0.0);
}

double log_region_g(std::int64_t n, std::int64_t l, double lambda,
                    std::int64_t z) {
  check_design_ints(n, l);
  check_z_range(n, z);
  if (z == n + 1) return kNegInf;
  if (z <= l) return std::log(double(n - z + 1) / double(n + 1));
  const double nu = 1.0 - lambda;
  return std::log(double(n - z + 1)) + log_binom_cdf(z, l, nu) -
         std::log(double(n + 1));
}

std::vector<RegionPoint> region_points(const TestDesign& design) {
  design.validate();
  std::vector<RegionPoint> pts;
  pts.reserve(size_t(design.n + 2));
  for (std::int64_t z = 0; z <= design.n + 1; ++z) {
    pts.push_back({z, std::exp(log_region_h(design.n, design.l, design.lambda, z)),
                   std::exp(log_region_g(design.n, design.l, design.lambda, z))});
  }
  return pts;
}

ConfidenceBound ucl_exact_log(std::int64_t n, std::int64_t l, double log_delta,
                              double lambda) {
  check_design_ints(n, l);
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw std::domain_error("lambda must lie in [0, 1)");
  }
  if (!(log_delta <= 0.0)) {
    throw std::domain_error("delta must lie in (0, 1]");
  }

  if (lambda == 0.0) {
    // closed form; the nontrivial branch only involves delta >= (l+1)/(n+1)
    const double log_thresh = std::log(double(l + 1) / double(n + 1));
    if (log_delta < log_thresh) {
      return {1.0, 0.0, Method::closed_form_lambda0, std::nullopt};
    }
    const double delta = std::exp(log_delta);
    const double num =
        double(l + 1) * double(n + 1 - l) - delta * double(n + 1);
    const double eb = num / (delta * double(n - l) * double(n + 1));
    return {clamp01(eb), clamp01(1.0 - eb), Method::closed_form_lambda0,
            std::nullopt};
  }

  const double log_bnl = log_binom_cdf(n, l, 1.0 - lambda);
  if (log_delta <= log_bnl) {
    return {1.0, 0.0, Method::region_exact, std::nullopt};
  }

  // z_hat = max{z in [l, n] : h_z >= delta}; h is strictly decreasing there.
  std::int64_t lo = l;
  std::int64_t hi = n + 1;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (log_region_h(n, l, lambda, mid) >= log_delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const std::int64_t z_hat = lo;

  // All ratios are taken relative to delta so subnormal magnitudes cancel.
  const double a = std::exp(log_region_h(n, l, lambda, z_hat) - log_delta);
  const double b = std::exp(log_region_h(n, l, lambda, z_hat + 1) - log_delta);
  double kappa = a > b ? (1.0 - b) / (a - b) : 1.0;
  kappa = clamp01(kappa);
  const double ga = std::exp(log_region_g(n, l, lambda, z_hat) - log_delta);
  const double gb = std::exp(log_region_g(n, l, lambda, z_hat + 1) - log_delta);
  const double comp = clamp01(kappa * ga + (1.0 - kappa) * gb);
  return {clamp01(1.0 - comp), comp, Method::region_exact, z_hat};
}

ConfidenceBound ucl_exact(const TestDesign& design) {
  design.validate();
  return ucl_exact_log(design.n, design.l, std::log(design.delta),
                       design.lambda);
}

ConfidenceBound ucl_iid_exact_log(std::int64_t k, std::int64_t n,
                                  double log_delta) {
  check_design_ints(n, k);
  if (!(log_delta <= 0.0)) {
    throw std::domain_error("delta must lie in (0, 1]");
  }
  // delta = 1: B_{n,k}(theta) < 1 strictly for theta > 0, so theta* = 0
  if (log_delta == 0.0) {
    return {0.0, 1.0, Method::iid_bisection, std::nullopt};
  }
  // B_{n,k}(theta) is continuous and nonincreasing in theta, from 1 at
  // theta=0 to 0 at theta=1 (k < n).
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (log_binom_cdf(n, k, mid) >= log_delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, clamp01(1.0 - lo), Method::iid_bisection, std::nullopt};
}

ConfidenceBound ucl_iid_exact(std::int64_t k, std::int64_t n, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::domain_error("delta must lie in (0, 1]");
  }
  return ucl_iid_exact_log(k, n, std::log(delta));
}

ScheduleEntry delta_z_schedule(std::int64_t n, double lambda, std::int64_t z) {
  if (n < 1) throw std::domain_error("n must be a positive integer");
  check_z_range(n, z);
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::domain_error("lambda must lie in (0, 1)");
  }
  if (z == 0) return {1.0, 0.0};
  const double p1 = std::pow(lambda, double(z - 1));
  const double delta =
      (double(n + 1 - z) * p1 * lambda + double(z) * p1) / double(n + 1);
  const double ucl = double(z) / (double(z) + double(n - z + 1) * lambda);
  return {delta, ucl};
}

SandwichBounds ucl_sandwich(const TestDesign& design) {
  design.validate();
  if (!(design.lambda > 0.0)) {
    throw std::domain_error("sandwich bounds require lambda in (0, 1)");
  }
  if (!(design.delta < 1.0)) {
    throw std::domain_error("sandwich bounds require delta in (0, 1)");
  }
  const std::int64_t n = design.n;
  const std::int64_t l = design.l;
  const double lambda = design.lambda;
  const double log_delta = std::log(design.delta);
  const auto zs = z_star_log(l, log_delta, lambda);
  const std::int64_t zu = zs.z_star_upper;  // z*
  const std::int64_t zl = zs.z_star_lower;  // z* - 1

  double lower = 0.0;
  if (zu + 1 <= n + 1) {
    lower = std::max(lower, std::exp(log_region_g(n, l, lambda, zu + 1) -
                                     log_region_h(n, l, lambda, zu + 1)));
  }
  const double t1 = lambda * double(n - zu);
  if (t1 > 0.0) {
    lower = std::max(lower, t1 / (t1 + double(zu) + 1.0));
    if (design.delta <= 0.5) {
      const double den =
          t1 + double(zu - l) + 1.0 + std::sqrt(lambda * double(l));
      lower = std::max(lower, t1 / den);
    }
  }

  double up_vertex = 0.0;
  if (zl <= n + 1) {
    up_vertex = std::max(0.0, std::exp(log_region_g(n, l, lambda, zl) -
                                       log_region_h(n, l, lambda, zl)));
  }
  const double t2 = lambda * double(n - zl + 1);
  const double up_ratio =
      std::max(0.0, t2 / (t2 + double(zl - l)));
  return {clamp01(lower), clamp01(std::min(up_vertex, up_ratio))};
}

}  // namespace randtest

#pragma once

#include <cstdint>
#include <optional>

namespace randtest {

// Lower-tail binomial query: failure budget l out of z trials with per-trial
// probability p (typically nu = 1 - lambda).
struct TailQuery {
  std::int64_t z = 0;
  std::int64_t l = 0;
  double p = 0.0;
  void validate() const;
};

// z_star_upper is the smallest z >= l with B_{z,l}(1-lambda) <= delta,
// z_star_lower = z_star_upper - 1.  Whenever z_star_upper > l the pair
// satisfies B_{z*,l} <= delta < B_{z*-1,l}.
struct CriticalIndex {
  std::int64_t z_star_upper = 0;
  std::int64_t z_star_lower = 0;
};

double binom_pmf(std::int64_t z, std::int64_t j, double p);
double log_binom_pmf(std::int64_t z, std::int64_t j, double p);

// B_{z,l}(p) = sum_{j=0..l} binom_pmf(z, j, p); exactly 1 when l >= z.
double binom_cdf(std::int64_t z, std::int64_t l, double p);
double binom_cdf(const TailQuery& q);
double log_binom_cdf(std::int64_t z, std::int64_t l, double p);

// Delta_{z,l} = B_{z,l} - B_{z+1,l} at nu = 1-lambda, computed through the
// product form (1-lambda) * binom_pmf(z, l, nu); zero when l >= z+1.
double delta_zl(std::int64_t z, std::int64_t l, double lambda);

CriticalIndex z_star(std::int64_t l, double delta, double lambda);
CriticalIndex z_star_log(std::int64_t l, double log_delta, double lambda);

// Diagnostic bounds on B_{z,l}(nu).  A bound whose precondition fails is
// left disengaged so callers can treat it as unavailable.
struct TailBounds {
  std::optional<double> chernoff_upper;      // requires l <= nu z
  std::optional<double> chernoff_lower;      // requires 1 <= l <= z-1
  std::optional<double> normal_approx;       // requires z >= 1
  std::optional<double> berry_esseen_error;  // requires l >= 1
};
TailBounds tail_bounds(std::int64_t z, std::int64_t l, double lambda);

}  // namespace randtest

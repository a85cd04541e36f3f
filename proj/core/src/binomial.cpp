#include "randtest/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "randtest/scalar_functions.hpp"

namespace randtest {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_prob(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0, 1]");
  }
}

void check_nonneg(std::int64_t v, const char* what) {
  if (v < 0) {
    throw std::domain_error(std::string(what) + " must be a nonnegative integer");
  }
}

double log_choose(std::int64_t z, std::int64_t j) {
  return std::lgamma(double(z + 1)) - std::lgamma(double(j + 1)) -
         std::lgamma(double(z - j + 1));
}

// Direct recursion b_{z,j+1} = b_{z,j} (z-j)/(j+1) p/(1-p), safe for small z
// and non-extreme p.
bool small_case(std::int64_t z, double p) {
  return z <= 50 && p >= 1e-6 && p <= 1.0 - 1e-6;
}

double binom_cdf_small(std::int64_t z, std::int64_t l, double p) {
  const double q = 1.0 - p;
  double term = std::pow(q, double(z));
  double acc = term;
  for (std::int64_t j = 0; j < l; ++j) {
    term *= double(z - j) / double(j + 1) * (p / q);
    acc += term;
  }
  return std::min(acc, 1.0);
}

// Mode-anchored scaled summation: one lgamma anchor at the largest term,
// then outward sweeps whose terms only decay, so early termination is safe.
double log_binom_cdf_large(std::int64_t z, std::int64_t l, double p) {
  const double q = 1.0 - p;
  std::int64_t mode = std::int64_t(std::floor(double(z + 1) * p));
  mode = std::clamp<std::int64_t>(mode, 0, std::min(l, z));
  double log_bm = log_choose(z, mode);
  if (mode > 0) log_bm += double(mode) * std::log(p);
  if (z - mode > 0) log_bm += double(z - mode) * std::log1p(-p);

  long double acc = 1.0L;
  long double term = 1.0L;
  for (std::int64_t j = mode; j >= 1; --j) {
    term *= (long double)(j)*q / ((long double)(z - j + 1) * p);
    acc += term;
    if (term < acc * 1e-19L) break;
  }
  term = 1.0L;
  for (std::int64_t j = mode; j < std::min(l, z); ++j) {
    term *= (long double)(z - j) * p / ((long double)(j + 1) * q);
    acc += term;
    if (term < acc * 1e-19L) break;
  }
  const double r = log_bm + double(logl(acc));
  return std::min(r, 0.0);
}

}  // namespace

void TailQuery::validate() const {
  check_nonneg(z, "z");
  check_nonneg(l, "l");
  check_prob(p, "p");
}

double log_binom_pmf(std::int64_t z, std::int64_t j, double p) {
  check_nonneg(z, "z");
  check_nonneg(j, "j");
  check_prob(p, "p");
  if (j >= z + 1) return kNegInf;
  if (p == 0.0) return j == 0 ? 0.0 : kNegInf;
  if (p == 1.0) return j == z ? 0.0 : kNegInf;
  return log_choose(z, j) + double(j) * std::log(p) +
         double(z - j) * std::log1p(-p);
}

double binom_pmf(std::int64_t z, std::int64_t j, double p) {
  check_nonneg(z, "z");
  check_nonneg(j, "j");
  check_prob(p, "p");
  if (j >= z + 1) return 0.0;
  if (p == 0.0) return j == 0 ? 1.0 : 0.0;
  if (p == 1.0) return j == z ? 1.0 : 0.0;
  if (small_case(z, p)) {
    const double q = 1.0 - p;
    double b = std::pow(q, double(z));
    for (std::int64_t i = 0; i < j; ++i) {
      b *= double(z - i) / double(i + 1) * (p / q);
    }
    return b;
  }
  return std::exp(log_binom_pmf(z, j, p));
}

double log_binom_cdf(std::int64_t z, std::int64_t l, double p) {
  check_nonneg(z, "z");
  check_nonneg(l, "l");
  check_prob(p, "p");
  if (l >= z) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return kNegInf;
  if (small_case(z, p)) return std::log(binom_cdf_small(z, l, p));
  return log_binom_cdf_large(z, l, p);
}

double binom_cdf(std::int64_t z, std::int64_t l, double p) {
  check_nonneg(z, "z");
  check_nonneg(l, "l");
  check_prob(p, "p");
  if (l >= z) return 1.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;
  if (small_case(z, p)) return binom_cdf_small(z, l, p);
  return std::exp(log_binom_cdf_large(z, l, p));
}

double binom_cdf(const TailQuery& q) {
  q.validate();
  return binom_cdf(q.z, q.l, q.p);
}

double delta_zl(std::int64_t z, std::int64_t l, double lambda) {
  check_nonneg(z, "z");
  check_nonneg(l, "l");
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::domain_error("lambda must lie in (0, 1)");
  }
  if (l >= z + 1) return 0.0;
  const double nu = 1.0 - lambda;
  return nu * binom_pmf(z, l, nu);
}

CriticalIndex z_star_log(std::int64_t l, double log_delta, double lambda) {
  check_nonneg(l, "l");
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::domain_error("lambda must lie in (0, 1)");
  }
  if (!(log_delta <= 0.0)) {
    throw std::domain_error("delta must lie in (0, 1]");
  }
  const double nu = 1.0 - lambda;
  if (log_binom_cdf(l, l, nu) <= log_delta) return {l, l - 1};
  std::int64_t lo = l;  // B_{lo,l} > delta
  std::int64_t step = 1;
  std::int64_t hi = l + step;
  while (log_binom_cdf(hi, l, nu) > log_delta) {
    lo = hi;
    step *= 2;
    hi = l + step;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (log_binom_cdf(mid, l, nu) <= log_delta) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {hi, hi - 1};
}

CriticalIndex z_star(std::int64_t l, double delta, double lambda) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::domain_error("delta must lie in (0, 1]");
  }
  return z_star_log(l, std::log(delta), lambda);
}

TailBounds tail_bounds(std::int64_t z, std::int64_t l, double lambda) {
  check_nonneg(z, "z");
  check_nonneg(l, "l");
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::domain_error("lambda must lie in (0, 1)");
  }
  const double nu = 1.0 - lambda;
  TailBounds out;
  if (z == 0) {
    if (l == 0) out.chernoff_upper = 1.0;
    return out;
  }
  const double frac = double(l) / double(z);
  if (double(l) <= nu * double(z)) {
    out.chernoff_upper = std::exp(-double(z) * rel_entropy(frac, nu));
  }
  if (l >= 1 && l <= z - 1) {
    out.chernoff_lower = std::exp(-double(z) * rel_entropy(frac, nu)) /
                         (std::exp(1.0) * std::sqrt(double(l)));
  }
  out.normal_approx =
      normal_cdf((double(l) - nu * double(z)) / std::sqrt(nu * lambda * double(z)));
  if (l >= 1) {
    out.berry_esseen_error = 0.5 / std::sqrt(nu * lambda * double(l));
  }
  return out;
}

}  // namespace randtest

#include "randtest/scalar_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace randtest {
namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

void check_prob(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0, 1]");
  }
}

// Wichura's PPND16 rational approximation for the normal quantile.
double quantile_raw(double p) {
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r +
                4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r +
              1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r +
            3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r +
                2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r +
              6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r +
            1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r +
             1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r +
           5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r +
         1.42343711074968357734e0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r +
             1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r +
           1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r +
         1.0);
  } else {
    r -= 5.0;
    x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r +
             2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r +
           1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r +
         6.65790464350110377720e0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r +
             7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r +
           1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r +
         1.0);
  }
  return q < 0.0 ? -x : x;
}

}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("normal_quantile requires p in (0, 1)");
  }
  double x = quantile_raw(p);
  // One Newton polish step against the cdf.
  const double d = normal_pdf(x);
  if (d > 1e-30) {
    x -= (normal_cdf(x) - p) / d;
  }
  return x;
}

double psi(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("psi requires delta in (0, 1)");
  }
  if (delta == 0.5) {
    throw std::domain_error("psi is singular at delta = 1/2");
  }
  const double q = normal_quantile(delta);
  return normal_pdf(q) / (delta * q);
}

double psi_times_quantile(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("psi_times_quantile requires delta in (0, 1)");
  }
  return normal_pdf(normal_quantile(delta)) / delta;
}

double psi_inverse(double y) {
  if (!(y > 0.0)) {
    throw std::domain_error("psi_inverse requires y > 0");
  }
  double lo = 0.5;
  double hi = 1.0 - 1e-15;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (psi(mid) > y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double rel_entropy(double p, double q) {
  check_prob(p, "p");
  check_prob(q, "q");
  if ((p > 0.0 && q == 0.0) || (p < 1.0 && q == 1.0)) {
    throw std::domain_error("relative entropy diverges");
  }
  double d = 0.0;
  if (p > 0.0) d += p * std::log(p / q);
  if (p < 1.0) d += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return std::max(d, 0.0);
}

double log_pois_cdf(std::int64_t k, double x) {
  if (k < 0) throw std::domain_error("k must be a nonnegative integer");
  if (!(x >= 0.0)) throw std::domain_error("x must be nonnegative");
  if (x == 0.0) return 0.0;
  // anchored at the largest term j* = min(k, floor(x))
  std::int64_t mode = std::min<std::int64_t>(k, std::int64_t(std::floor(x)));
  const double log_tm = -x + double(mode) * std::log(x) - std::lgamma(double(mode + 1));
  long double acc = 1.0L;
  long double term = 1.0L;
  for (std::int64_t j = mode; j >= 1; --j) {
    term *= (long double)(j) / x;
    acc += term;
    if (term < acc * 1e-19L) break;
  }
  term = 1.0L;
  for (std::int64_t j = mode; j < k; ++j) {
    term *= x / (long double)(j + 1);
    acc += term;
    if (term < acc * 1e-19L) break;
  }
  return std::min(log_tm + double(logl(acc)), 0.0);
}

double pois_cdf(std::int64_t k, double x) { return std::exp(log_pois_cdf(k, x)); }

InverseSolve t_pois(std::int64_t k, double delta) {
  if (k < 0) throw std::domain_error("k must be a nonnegative integer");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("delta must lie in (0, 1)");
  }
  const double log_delta = std::log(delta);
  double lo = 0.0;
  double hi = 1.0;
  int iters = 0;
  while (log_pois_cdf(k, hi) > log_delta) {
    lo = hi;
    hi *= 2.0;
    ++iters;
  }
  while (hi - lo > 1e-15 * std::max(1.0, hi) && iters < 200) {
    const double mid = 0.5 * (lo + hi);
    if (log_pois_cdf(k, mid) > log_delta) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++iters;
  }
  const double t = 0.5 * (lo + hi);
  return {t, pois_cdf(k, t) - delta, iters};
}

InverseSolve t_div(double gamma, double x) {
  if (!(gamma >= 0.0)) throw std::domain_error("gamma must be nonnegative");
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("x must lie in (0, 1)");
  if (gamma == 0.0) {
    return {-1.0 / std::log1p(-x), 0.0, 0};
  }
  auto f = [&](double t) { return t * rel_entropy(gamma / t, x) - 1.0; };
  double lo = gamma / x;  // f(lo) = -1
  double hi = std::max(2.0 * lo, lo + 1.0);
  int iters = 0;
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    ++iters;
  }
  while (hi - lo > 1e-15 * std::max(1.0, hi) && iters < 200) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++iters;
  }
  const double t = 0.5 * (lo + hi);
  return {t, f(t), iters};
}

InverseSolve eps_div(double s, double r) {
  if (!(s >= 0.0 && s < 1.0)) throw std::domain_error("s must lie in [0, 1)");
  if (!(r > 0.0)) throw std::domain_error("r must be positive");
  if (s == 0.0) {
    return {-std::expm1(-r), 0.0, 0};
  }
  auto f = [&](double eps) { return rel_entropy(s, eps) - r; };
  double lo = s;  // f(lo) = -r
  double hi = s + (1.0 - s) * 0.5;
  int iters = 0;
  while (f(hi) < 0.0 && iters < 200) {
    lo = hi;
    hi = 1.0 - 0.5 * (1.0 - hi);
    ++iters;
  }
  while (hi - lo > 1e-16 * std::max(1.0, hi) && iters < 200) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++iters;
  }
  const double eps = 0.5 * (lo + hi);
  return {eps, f(eps), iters};
}

InverseSolve s_div(double eps, double r) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::domain_error("eps must lie in (0, 1)");
  }
  const double rmax = -std::log1p(-eps);
  if (!(r > 0.0 && r <= rmax)) {
    throw std::domain_error("r must lie in (0, -ln(1-eps)]");
  }
  if (r == rmax) {
    return {0.0, 0.0, 0};
  }
  auto f = [&](double s) { return rel_entropy(s, eps) - r; };
  double lo = 0.0;  // f(lo) = rmax - r >= 0
  double hi = eps;  // f(hi) = -r < 0
  int iters = 0;
  while (hi - lo > 1e-16 * std::max(1.0, hi) && iters < 200) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++iters;
  }
  const double s = 0.5 * (lo + hi);
  return {s, f(s), iters};
}

}  // namespace randtest

#pragma once

#include <cstdint>

namespace randtest {

double normal_pdf(double x);
double normal_cdf(double x);
// Inverse of normal_cdf; throws for p outside (0, 1).
double normal_quantile(double p);

// psi(delta) = phi(q) / (delta * q) with q = Phi^{-1}(delta).  Singular at
// delta = 1/2; callers needing the product q * psi(delta) should use
// psi_times_quantile, which is continuous on (0, 1).
double psi(double delta);
double psi_times_quantile(double delta);  // phi(Phi^{-1}(delta)) / delta
// Inverse of psi restricted to delta in (1/2, 1), where psi decreases from
// +inf to 0; defined for y > 0.
double psi_inverse(double y);

// Binary relative entropy D(p||q) with the 0 ln 0 = 0 convention.  Throws
// when the divergence is infinite (p>0, q=0 or p<1, q=1).
double rel_entropy(double p, double q);

double pois_cdf(std::int64_t k, double x);
double log_pois_cdf(std::int64_t k, double x);

// Result of a monotone bisection solve.
struct InverseSolve {
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Solves Pois(k, t) = delta for t >= 0.
InverseSolve t_pois(std::int64_t k, double delta);
// Solves t * D(gamma/t || x) = 1 on t >= gamma/x; closed form -1/ln(1-x)
// when gamma = 0.
InverseSolve t_div(double gamma, double x);
// Solves r = D(s || eps) for eps in [s, 1).
InverseSolve eps_div(double s, double r);
// Solves r = D(s || eps) for s in [0, eps]; requires r <= -ln(1-eps).
InverseSolve s_div(double eps, double r);

}  // namespace randtest

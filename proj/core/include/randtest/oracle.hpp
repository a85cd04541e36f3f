#pragma once

#include <vector>

#include "randtest/exact_limits.hpp"

namespace randtest {

// Mixture over Z = 0..n+1 describing a permutation-invariant distribution.
struct AdversaryMixture {
  std::vector<double> weights;  // size n+2, simplex
  double acceptance_prob(const TestDesign& design) const;    // sum w_z h_z
  double joint_success_prob(const TestDesign& design) const;  // sum w_z g_z
};

// Independent ground truth for ucl_exact: minimizes g/h over the region's
// feasible slice {h >= delta} by scanning vertices and straddling chords.
// Capped at n <= 2000.
ConfidenceBound ucl_oracle_lp(const TestDesign& design);

// Piecewise-linear lower boundary of the region evaluated at acceptance
// probability x; zero left of the last vertex.
double lower_envelope_eval(const TestDesign& design, double x);

}  // namespace randtest

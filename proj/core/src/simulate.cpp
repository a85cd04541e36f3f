#include "randtest/simulate.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "randtest/rng.hpp"

namespace randtest {

SimOutcome simulate_protocol(const TruthSpec& truth, const TestDesign& design,
                             std::int64_t trials, std::uint64_t seed) {
  design.validate();
  if (trials < 1) throw std::domain_error("trials must be >= 1");
  if (truth.kind == TruthSpec::Kind::vertex) {
    if (truth.z < 0 || truth.z > design.n + 1) {
      throw std::domain_error("vertex z must lie in [0, n+1]");
    }
  } else if (!(truth.theta >= 0.0 && truth.theta <= 1.0)) {
    throw std::domain_error("theta must lie in [0, 1]");
  }

  Xoshiro256StarStar rng(seed);
  const std::int64_t n = design.n;
  std::int64_t accept = 0;
  std::int64_t joint = 0;

  if (truth.kind == TruthSpec::Kind::vertex) {
    // Uniformly random placement of z failures among the n+1 slots via
    // partial Fisher-Yates; slot n is the held-out variable.
    std::vector<std::int64_t> idx(size_t(n + 1));
    std::iota(idx.begin(), idx.end(), std::int64_t(0));
    const std::int64_t z = truth.z;
    for (std::int64_t t = 0; t < trials; ++t) {
      for (std::int64_t j = 0; j < z; ++j) {
        const std::uint64_t off = rng.below(std::uint64_t(n + 1 - j));
        std::swap(idx[size_t(j)], idx[size_t(j + std::int64_t(off))]);
      }
      std::int64_t fails = 0;
      bool y_last = false;
      for (std::int64_t j = 0; j < z; ++j) {
        if (idx[size_t(j)] == n) {
          y_last = true;
        } else if (!rng.bernoulli(design.lambda)) {
          ++fails;
        }
      }
      if (fails <= design.l) {
        ++accept;
        if (y_last) ++joint;
      }
    }
  } else {
    const double theta = truth.theta;
    for (std::int64_t t = 0; t < trials; ++t) {
      std::int64_t fails = 0;
      for (std::int64_t i = 0; i < n; ++i) {
        if (rng.bernoulli(theta) && !rng.bernoulli(design.lambda)) {
          ++fails;
        }
      }
      const bool y_last = rng.bernoulli(theta);
      if (fails <= design.l) {
        ++accept;
        if (y_last) ++joint;
      }
    }
  }

  SimOutcome out;
  out.trials = trials;
  out.seed = seed;
  out.accept_count = accept;
  out.joint_fail_count = joint;
  out.p_accept = double(accept) / double(trials);
  out.std_err_accept =
      std::sqrt(out.p_accept * (1.0 - out.p_accept) / double(trials));
  if (accept > 0) {
    out.p_fail_given_accept = double(joint) / double(accept);
    out.std_err_cond = std::sqrt(out.p_fail_given_accept *
                                 (1.0 - out.p_fail_given_accept) /
                                 double(accept));
  } else {
    out.p_fail_given_accept = std::numeric_limits<double>::quiet_NaN();
    out.std_err_cond = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace randtest

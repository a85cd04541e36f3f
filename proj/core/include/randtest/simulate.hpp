#pragma once

#include <cstdint>

#include "randtest/exact_limits.hpp"

namespace randtest {

// Ground-truth distribution for the protocol simulator: either the
// permutation-invariant vertex with exactly z failures among the n+1 slots,
// or iid coin flips with failure probability theta.
struct TruthSpec {
  enum class Kind { vertex, iid };
  Kind kind = Kind::vertex;
  std::int64_t z = 0;
  double theta = 0.0;

  static TruthSpec vertex(std::int64_t z) { return {Kind::vertex, z, 0.0}; }
  static TruthSpec iid(double theta) { return {Kind::iid, 0, theta}; }
};

struct SimOutcome {
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::int64_t accept_count = 0;
  std::int64_t joint_fail_count = 0;  // accepted AND Y_{n+1} = 1
  double p_accept = 0.0;
  double p_fail_given_accept = 0.0;  // NaN when accept_count == 0
  double std_err_accept = 0.0;
  double std_err_cond = 0.0;  // NaN when accept_count == 0
};

// Seeded Monte-Carlo run of the full protocol: draw Y_1..Y_{n+1} from the
// truth, flip each observed failure to a success with probability lambda,
// accept iff the surviving failure count is <= l.  The single-seed
// sequential stream is the reference; partition trials across workers only
// with per-worker derived sub-seeds and merge counts by summation.
SimOutcome simulate_protocol(const TruthSpec& truth, const TestDesign& design,
                             std::int64_t trials, std::uint64_t seed);

}  // namespace randtest

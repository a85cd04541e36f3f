#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "randtest/binomial.hpp"
#include "randtest/exact_limits.hpp"
#include "support/oracles.hpp"

using namespace randtest;

TEST_CASE("design validation") {
  CHECK_THROWS_AS(ucl_exact({0, 0, 0.5, 0.5}), std::domain_error);
  CHECK_THROWS_AS(ucl_exact({5, 5, 0.5, 0.5}), std::domain_error);
  CHECK_THROWS_AS(ucl_exact({5, 0, 0.0, 0.5}), std::domain_error);
  CHECK_THROWS_AS(ucl_exact({5, 0, 1.5, 0.5}), std::domain_error);
  CHECK_THROWS_AS(ucl_exact({5, 0, 0.5, 1.0}), std::domain_error);
  CHECK_THROWS_AS(ucl_exact({5, 0, 0.5, -0.1}), std::domain_error);
}

TEST_CASE("region points match the convolution reference") {
  const TestDesign d{10, 3, 0.5, 1.0 / 3.0};
  const auto pts = region_points(d);
  REQUIRE(pts.size() == 12);
  for (const auto& p : pts) {
    const auto ref = oracles::region_point_ref(d.n, d.l, d.lambda, p.z);
    CHECK(p.h == doctest::Approx(ref.h).epsilon(1e-12));
    CHECK(p.g == doctest::Approx(ref.g).epsilon(1e-12).scale(1.0));
  }
  // z = 0 is the all-success vertex
  CHECK(pts[0].h == 1.0);
  CHECK(pts[0].g == 1.0);
}

TEST_CASE("region points at lambda = 0") {
  const std::int64_t n = 9;
  const std::int64_t l = 2;
  const auto pts = region_points({n, l, 0.5, 0.0});
  for (const auto& p : pts) {
    if (p.z <= l) {
      CHECK(p.h == 1.0);
      CHECK(p.g == doctest::Approx(double(n - p.z + 1) / double(n + 1)));
    } else if (p.z == l + 1) {
      CHECK(p.h == doctest::Approx(double(l + 1) / double(n + 1)));
      CHECK(p.g == 0.0);
    } else {
      CHECK(p.h == 0.0);
      CHECK(p.g == 0.0);
    }
  }
}

TEST_CASE("region monotonicity and slope convexity") {
  for (double lambda : {0.1, 0.5, 0.9}) {
    for (std::int64_t n : {5, 17, 40, 60}) {
      for (std::int64_t l : {std::int64_t(0), std::int64_t(1), n / 3, n - 1}) {
        const auto pts = region_points({n, l, 0.5, lambda});
        // strictness is checked only where the gap survives double
        // rounding; at lambda = 0.9 with l near n the adjacent B values
        // collapse to 1
        for (std::int64_t z = 1; z <= n + 1; ++z) {
          CHECK(pts[size_t(z)].g <= pts[size_t(z) - 1].g);
          if (pts[size_t(z) - 1].g < 1.0 - 1e-12 || pts[size_t(z)].g < 1.0 - 1e-12) {
            CHECK(pts[size_t(z)].g < pts[size_t(z) - 1].g);
          }
          if (z > l) CHECK(pts[size_t(z)].h <= pts[size_t(z) - 1].h);
          CHECK(pts[size_t(z)].h > 0.0);
        }
        // slopes of consecutive lower-boundary segments strictly increase
        // left to right; z ascending walks the boundary right to left
        double prev_slope = std::numeric_limits<double>::infinity();
        for (std::int64_t z = l; z <= n; ++z) {
          const auto& a = pts[size_t(z + 1)];
          const auto& b = pts[size_t(z)];
          if (b.h - a.h < 1e-14) continue;  // unresolvable segment
          const double slope = (b.g - a.g) / (b.h - a.h);
          CHECK(slope < prev_slope);
          prev_slope = slope;
        }
      }
    }
  }
}

TEST_CASE("ucl_exact closed form at lambda = 0") {
  CHECK(ucl_exact({9, 0, 0.5, 0.0}).epsilon_bar ==
        doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(ucl_exact({9, 0, 0.5, 0.0}).method == Method::closed_form_lambda0);
  // trivial branch: delta < (l+1)/(n+1)
  CHECK(ucl_exact({5, 0, 0.05, 0.0}).epsilon_bar == 1.0);
  for (std::int64_t n : {1, 7, 23}) {
    for (std::int64_t k = 0; k < n; ++k) {
      for (double delta : {0.05, 0.3, 0.77, 1.0}) {
        CHECK(ucl_exact({n, k, delta, 0.0}).epsilon_bar ==
              doctest::Approx(oracles::ucl_lambda0_ref(k, n, delta))
                  .epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("ucl_exact matches the l = 0 schedule") {
  CHECK(ucl_exact({1, 0, 0.75, 0.5}).epsilon_bar ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  for (std::int64_t n : {1, 4, 13, 30}) {
    for (double lambda : {0.2, 0.5, 0.8}) {
      for (std::int64_t z = 0; z <= n + 1; ++z) {
        const auto sched = delta_z_schedule(n, lambda, z);
        const auto cb = ucl_exact({n, 0, sched.delta_z, lambda});
        CHECK(cb.epsilon_bar == doctest::Approx(sched.ucl).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("delta_z_schedule endpoints") {
  {
    const auto s = delta_z_schedule(8, 0.4, 0);
    CHECK(s.delta_z == 1.0);
    CHECK(s.ucl == 0.0);
  }
  {
    const auto s = delta_z_schedule(8, 0.4, 9);
    CHECK(s.delta_z == doctest::Approx(std::pow(0.4, 8)).epsilon(1e-13));
    CHECK(s.ucl == 1.0);
  }
  {
    const auto s = delta_z_schedule(1, 0.5, 1);
    CHECK(s.delta_z == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(s.ucl == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  }
}

TEST_CASE("ucl_iid_exact") {
  CHECK(ucl_iid_exact(0, 1, 0.25).epsilon_bar ==
        doctest::Approx(0.75).epsilon(1e-12));
  CHECK(ucl_iid_exact(3, 9, 1.0).epsilon_bar ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  {
    const auto cb = ucl_iid_exact(1, 10, 0.5);
    CHECK(cb.epsilon_bar > 0.1);  // > k/n for delta <= 1/2
    CHECK(binom_cdf(10, 1, cb.epsilon_bar) ==
          doctest::Approx(0.5).epsilon(1e-9));
  }
  // defining property: B_{n,k}(theta*) = delta at the returned theta
  for (std::int64_t n : {3, 12, 41}) {
    for (std::int64_t k = 0; k < n; k += 3) {
      for (double delta : {0.9, 0.5, 0.04}) {
        const auto cb = ucl_iid_exact(k, n, delta);
        CHECK(binom_cdf(n, k, cb.epsilon_bar) ==
              doctest::Approx(delta).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("delta = 1 pins the mixture to z <= l") {
  for (double lambda : {0.25, 0.7}) {
    for (std::int64_t n : {2, 9}) {
      for (std::int64_t l = 0; l < n; ++l) {
        CHECK(ucl_exact({n, l, 1.0, lambda}).epsilon_bar ==
              doctest::Approx(double(l) / double(n + 1)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("step values at delta = h_z") {
  for (std::int64_t n : {6, 19}) {
    for (std::int64_t l : {std::int64_t(0), std::int64_t(2)}) {
      for (double lambda : {0.3, 0.8}) {
        double prev = 1.0;
        for (std::int64_t z = l; z <= n + 1; ++z) {
          const double log_h = log_region_h(n, l, lambda, z);
          const double log_g = log_region_g(n, l, lambda, z);
          const auto cb = ucl_exact_log(n, l, log_h, lambda);
          const double want = std::exp(log_g - log_h);
          CHECK(cb.complement == doctest::Approx(want).epsilon(1e-12).scale(1.0));
          CHECK(cb.complement <= prev + 1e-12);  // nonincreasing in z
          prev = cb.complement;
        }
      }
    }
  }
}

TEST_CASE("tiny lambda approaches the lambda = 0 closed form") {
  for (std::int64_t n : {4, 11, 30}) {
    for (std::int64_t l = 0; l < n; l += 2) {
      for (double delta : {0.2, 0.5, 0.9}) {
        const double a = ucl_exact({n, l, delta, 1e-12}).epsilon_bar;
        const double b = ucl_exact({n, l, delta, 0.0}).epsilon_bar;
        CHECK(a == doctest::Approx(b).epsilon(1e-6).scale(1.0));
      }
    }
  }
}

TEST_CASE("monotonicity of ucl_exact in delta, n, l") {
  // the grid stops at 0.99: at delta = 1 with extreme lambda the adjacent
  // B values collapse to 1 in double and the step location is unrepresentable
  for (double lambda : {0.0, 0.3, 0.9}) {
    for (std::int64_t n = 1; n <= 25; ++n) {
      for (std::int64_t l = 0; l < n; ++l) {
        double prev = 2.0;
        for (int di = 1; di <= 19; ++di) {
          const double delta = 0.05 * di;
          const double v = ucl_exact({n, l, delta, lambda}).epsilon_bar;
          CHECK(v <= prev + 1e-12);
          prev = v;
          CHECK(ucl_exact({n + 1, l, delta, lambda}).epsilon_bar <= v + 1e-12);
          if (l + 1 < n) {
            CHECK(ucl_exact({n, l + 1, delta, lambda}).epsilon_bar >=
                  v - 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("lower bounds on the limit") {
  for (std::int64_t n = 2; n <= 30; n += 4) {
    for (std::int64_t k = 0; k < n; ++k) {
      for (double delta : {0.1, 0.3, 0.5}) {
        // iid bound
        CHECK(ucl_iid_exact(k, n, delta).epsilon_bar > double(k) / double(n));
        // deterministic bound for k/n < delta <= 1/2
        if (double(k) / double(n) < delta) {
          CHECK(ucl_exact({n, k, delta, 0.0}).epsilon_bar >
                double(k) / (double(n) * delta));
        }
        // randomized bound
        for (double lambda : {0.2, 0.6}) {
          const double nu = 1.0 - lambda;
          const double v = ucl_exact({n, k, delta, lambda}).epsilon_bar;
          if (double(k) >= nu * double(n)) {
            CHECK(v == 1.0);
          } else {
            CHECK(v > double(k) / (nu * double(n)));
          }
        }
      }
    }
  }
}

TEST_CASE("sandwich bounds bracket the complement") {
  for (double lambda : {0.1, 0.5, 0.9}) {
    for (std::int64_t n = 1; n <= 40; n += 3) {
      for (std::int64_t l = 0; l < n; l += (n > 10 ? 3 : 1)) {
        for (int di = 1; di <= 19; ++di) {
          const double delta = 0.05 * di;
          const TestDesign d{n, l, delta, lambda};
          const auto sw = ucl_sandwich(d);
          const double comp = ucl_exact(d).complement;
          CHECK(sw.complement_lower <= comp + 1e-11);
          CHECK(comp <= sw.complement_upper + 1e-11);
        }
      }
    }
  }
}

TEST_CASE("sandwich at delta <= B_{n,l}") {
  {
    // complement is exactly zero; the bound stays valid
    const TestDesign d{6, 0, 0.01, 0.5};  // B_{6,0}(0.5) = 1/64 > 0.01
    REQUIRE(d.delta <= binom_cdf(6, 0, 0.5));
    const auto sw = ucl_sandwich(d);
    CHECK(ucl_exact(d).complement == 0.0);
    CHECK(ucl_exact(d).epsilon_bar == 1.0);
    CHECK(sw.complement_lower == 0.0);
    CHECK(sw.complement_upper >= 0.0);
  }
  {
    // deep below B_{n,l} the upper bound itself collapses to zero
    const TestDesign d{6, 0, 1e-9, 0.5};
    const auto sw = ucl_sandwich(d);
    CHECK(sw.complement_upper == 0.0);
    CHECK(ucl_exact(d).epsilon_bar == 1.0);
  }
}

TEST_CASE("refined lower bound at delta <= 1/2") {
  // complement >= 1 - (z* - l + 1 + sqrt(lambda l)) / (lambda n)
  const double delta = 0.5;
  for (double lambda : {0.3, 0.7}) {
    for (std::int64_t n : {40, 80}) {
      for (std::int64_t l = 0; l < n / 2; l += 7) {
        const double nu = 1.0 - lambda;
        if (double(l) > nu * double(n)) continue;
        const auto zs = z_star(l, delta, lambda);
        const double bound = 1.0 - (double(zs.z_star_upper - l) + 1.0 +
                                    std::sqrt(lambda * double(l))) /
                                       (lambda * double(n));
        CHECK(ucl_exact({n, l, delta, lambda}).complement >= bound - 1e-11);
      }
    }
  }
}

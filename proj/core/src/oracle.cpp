#include "randtest/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace randtest {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double cross(const RegionPoint& a, const RegionPoint& b, const RegionPoint& c) {
  return (b.h - a.h) * (c.g - a.g) - (b.g - a.g) * (c.h - a.h);
}

// Lower convex hull over (h, g), h ascending.
std::vector<RegionPoint> lower_hull(std::vector<RegionPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const RegionPoint& a, const RegionPoint& b) {
    if (a.h != b.h) return a.h < b.h;
    return a.g < b.g;
  });
  // keep only the lowest point at duplicate abscissas
  std::vector<RegionPoint> uniq;
  for (const auto& p : pts) {
    if (!uniq.empty() && uniq.back().h == p.h) continue;
    uniq.push_back(p);
  }
  std::vector<RegionPoint> hull;
  for (const auto& p : uniq) {
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], hull[hull.size() - 1], p) <= 0.0) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return hull;
}

}  // namespace

double AdversaryMixture::acceptance_prob(const TestDesign& design) const {
  if (std::int64_t(weights.size()) != design.n + 2) {
    throw std::domain_error("mixture must have n+2 weights");
  }
  double acc = 0.0;
  for (std::int64_t z = 0; z <= design.n + 1; ++z) {
    acc += weights[size_t(z)] *
           std::exp(log_region_h(design.n, design.l, design.lambda, z));
  }
  return acc;
}

double AdversaryMixture::joint_success_prob(const TestDesign& design) const {
  if (std::int64_t(weights.size()) != design.n + 2) {
    throw std::domain_error("mixture must have n+2 weights");
  }
  double acc = 0.0;
  for (std::int64_t z = 0; z <= design.n + 1; ++z) {
    acc += weights[size_t(z)] *
           std::exp(log_region_g(design.n, design.l, design.lambda, z));
  }
  return acc;
}

ConfidenceBound ucl_oracle_lp(const TestDesign& design) {
  design.validate();
  if (design.n > 2000) {
    throw std::domain_error("oracle supports n <= 2000");
  }
  const auto pts = region_points(design);
  const double delta = design.delta;

  // The minimum of the linear-fractional objective g/h over the feasible
  // slice {h >= delta} sits either at a vertex with h >= delta or on a chord
  // crossing the line h = delta.
  double best = kInf;
  std::optional<std::int64_t> best_vertex;
  for (const auto& p : pts) {
    if (p.h >= delta) {
      const double v = p.g / p.h;
      if (v < best) {
        best = v;
        best_vertex = p.z;
      }
    }
  }
  const size_t m = pts.size();
  for (size_t i = 0; i + 1 < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      const RegionPoint& a = pts[i];
      const RegionPoint& b = pts[j];
      if ((a.h - delta) * (b.h - delta) > 0.0) continue;
      if (a.h == b.h) continue;
      const double w = (delta - b.h) / (a.h - b.h);
      // endpoint crossings coincide with vertex candidates already scanned
      if (w <= 0.0 || w >= 1.0) continue;
      const double g = b.g + w * (a.g - b.g);
      const double v = g / delta;
      if (v < best) {
        best = v;
        best_vertex.reset();
      }
    }
  }
  if (best == kInf) {
    // h_0 = 1 >= delta always; unreachable under validated inputs
    throw std::logic_error("oracle found no feasible point");
  }
  const double comp = clamp01(best);
  return {clamp01(1.0 - comp), comp, Method::oracle_lp, best_vertex};
}

double lower_envelope_eval(const TestDesign& design, double x) {
  design.validate();
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("x must lie in [0, 1]");
  }
  const auto hull = lower_hull(region_points(design));
  if (x < hull.front().h) return 0.0;
  if (x >= hull.back().h) return hull.back().g;
  auto it = std::upper_bound(
      hull.begin(), hull.end(), x,
      [](double v, const RegionPoint& p) { return v < p.h; });
  const RegionPoint& hi = *it;
  const RegionPoint& lo = *(it - 1);
  const double w = (x - lo.h) / (hi.h - lo.h);
  return lo.g + w * (hi.g - lo.g);
}

}  // namespace randtest

#include "randtest/curves.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "randtest/asymptotics.hpp"
#include "randtest/detection.hpp"
#include "randtest/exact_limits.hpp"
#include "randtest/scalar_functions.hpp"
#include "internal.hpp"

namespace randtest::curves {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string to_csv() const {
    std::string out;
    for (size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ',';
      out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += fmt(row[i]);
      }
      out += '\n';
    }
    return out;
  }

  std::string to_json(const char* figure) const {
    std::string out = "{\"figure\":\"";
    out += figure;
    out += "\",\"columns\":[";
    for (size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ',';
      out += '"';
      out += columns[i];
      out += '"';
    }
    out += "],\"rows\":[";
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r) out += ',';
      out += '[';
      for (size_t i = 0; i < rows[r].size(); ++i) {
        if (i) out += ',';
        out += fmt(rows[r][i]);
      }
      out += ']';
    }
    out += "]}\n";
    return out;
  }
};

// k0 = 100, delta = 0.1, lambda in {0, 0.01, 0.5, 0.95}, plus the iid
// baseline; exact points alongside the 1/n asymptotes.
Dataset const_ucl_dataset() {
  const std::int64_t k0 = 100;
  const double delta = 0.1;
  const std::vector<double> lambdas = {0.0, 0.01, 0.5, 0.95};
  Dataset d;
  d.columns = {"n"};
  for (double lam : lambdas) {
    const std::string tag = fmt(lam);
    d.columns.push_back("exact_lambda" + tag);
    d.columns.push_back("asym_lambda" + tag);
  }
  d.columns.push_back("exact_iid");
  d.columns.push_back("asym_iid");

  std::vector<double> asym_coeff;
  std::vector<std::int64_t> budgets;
  for (double lam : lambdas) {
    if (lam == 0.0) {
      budgets.push_back(k0);
      asym_coeff.push_back((double(k0) + 1.0 - delta) / delta);
    } else {
      const std::int64_t l = detail::ceil_snap((1.0 - lam) * double(k0));
      budgets.push_back(l);
      asym_coeff.push_back(coeff_G(l, delta, lam));
    }
  }
  const double t_iid = t_pois(k0, delta).value;

  for (std::int64_t n = 120; n <= 4000; n += 20) {
    std::vector<double> row = {double(n)};
    for (size_t i = 0; i < lambdas.size(); ++i) {
      row.push_back(
          ucl_exact({n, budgets[i], delta, lambdas[i]}).epsilon_bar);
      row.push_back(asym_coeff[i] / double(n));
    }
    row.push_back(ucl_iid_exact(k0, n, delta).epsilon_bar);
    row.push_back(t_iid / double(n));
    d.rows.push_back(std::move(row));
  }
  return d;
}

// s = 0.1, delta = 0.1, lambda in {0.01, 0.05}, the minimized sqrt(n)
// coefficient, and the iid baseline.
Dataset linear_ucl_dataset() {
  const double s = 0.1;
  const double delta = 0.1;
  const std::vector<double> lambdas = {0.01, 0.05};
  Dataset d;
  d.columns = {"n"};
  for (double lam : lambdas) {
    const std::string tag = fmt(lam);
    d.columns.push_back("exact_lambda" + tag);
    d.columns.push_back("asym_lambda" + tag);
  }
  d.columns.push_back("asym_min");
  d.columns.push_back("exact_iid");
  d.columns.push_back("asym_iid");

  std::vector<double> cs;
  for (double lam : lambdas) cs.push_back(coeff_C(lam, s, delta));
  const double c_min = coeff_C_min(s, delta);
  const double q = normal_quantile(delta);

  for (std::int64_t n = 20; n <= 4000; n += 20) {
    std::vector<double> row = {double(n)};
    const double rsn = 1.0 / std::sqrt(double(n));
    for (size_t i = 0; i < lambdas.size(); ++i) {
      const std::int64_t l =
          detail::ceil_snap((1.0 - lambdas[i]) * s * double(n));
      row.push_back(ucl_exact({n, l, delta, lambdas[i]}).epsilon_bar);
      row.push_back(s + cs[i] * rsn);
    }
    row.push_back(s + c_min * rsn);
    const std::int64_t k = detail::ceil_snap(s * double(n));
    row.push_back(ucl_iid_exact(k, n, delta).epsilon_bar);
    row.push_back(s - q * std::sqrt(s * (1.0 - s)) * rsn);
    d.rows.push_back(std::move(row));
  }
  return d;
}

// Optimal randomization parameter against the gap, for several theta0 at
// delta = 0.1.
Dataset opt_lambda_dataset() {
  const double delta = 0.1;
  const std::vector<double> theta0s = {1e-4, 1e-3, 1e-2, 0.1};
  Dataset d;
  d.columns = {"gap"};
  for (double th : theta0s) d.columns.push_back("lambda_opt_theta" + fmt(th));
  for (int i = 1; i <= 60; ++i) {
    const double gap = 0.05 * double(i);
    std::vector<double> row = {gap};
    for (double th : theta0s) {
      row.push_back(optimal_lambda_detection(th, gap, delta).lambda0);
    }
    d.rows.push_back(std::move(row));
  }
  return d;
}

// Limiting detection probabilities at theta0 = 0.1, delta = 0.1 for fixed
// lambda, the per-gap optimal lambda, and the iid baseline.
Dataset detect_prob_dataset() {
  const double theta0 = 0.1;
  const double delta = 0.1;
  Dataset d;
  d.columns = {"gap", "prob_iid", "prob_lambda0.1", "prob_lambda0.3",
               "prob_optimal"};
  for (int i = 0; i <= 60; ++i) {
    const double gap = 0.05 * double(i);
    DetectionSetting setting;
    setting.theta0 = theta0;
    setting.delta = delta;
    setting.e = gap;
    setting.t = 0.0;
    std::vector<double> row = {gap};
    row.push_back(detect_prob(setting, TestMode::iid));
    setting.lambda = 0.1;
    row.push_back(detect_prob(setting, TestMode::randomized));
    setting.lambda = 0.3;
    row.push_back(detect_prob(setting, TestMode::randomized));
    if (gap == 0.0) {
      // sup over lambda approaches Phi(Phi^{-1}(delta)) as lambda -> 1
      row.push_back(delta);
    } else {
      const auto opt = optimal_lambda_detection(theta0, gap, delta);
      row.push_back(normal_cdf(opt.kappa_value));
    }
    d.rows.push_back(std::move(row));
  }
  return d;
}

}  // namespace

const char* figure_name(Figure f) {
  switch (f) {
    case Figure::const_ucl: return "const-ucl";
    case Figure::linear_ucl: return "linear-ucl";
    case Figure::opt_lambda: return "opt-lambda";
    case Figure::detect_prob: return "detect-prob";
  }
  return "unknown";
}

std::optional<Figure> figure_from_name(std::string_view name) {
  if (name == "const-ucl") return Figure::const_ucl;
  if (name == "linear-ucl") return Figure::linear_ucl;
  if (name == "opt-lambda") return Figure::opt_lambda;
  if (name == "detect-prob") return Figure::detect_prob;
  return std::nullopt;
}

std::string generate(Figure figure, Format format) {
  Dataset d;
  switch (figure) {
    case Figure::const_ucl: d = const_ucl_dataset(); break;
    case Figure::linear_ucl: d = linear_ucl_dataset(); break;
    case Figure::opt_lambda: d = opt_lambda_dataset(); break;
    case Figure::detect_prob: d = detect_prob_dataset(); break;
  }
  return format == Format::csv ? d.to_csv() : d.to_json(figure_name(figure));
}

}  // namespace randtest::curves

// Command-line surface for the randomized-test confidence-limit library.
// Every command validates its inputs before computing and emits a single
// machine-readable JSON record (floats at 12 significant digits).
// Exit codes: 0 ok, 1 verification/computation failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "randtest/asymptotics.hpp"
#include "randtest/binomial.hpp"
#include "randtest/curves.hpp"
#include "randtest/detection.hpp"
#include "randtest/exact_limits.hpp"
#include "randtest/oracle.hpp"
#include "randtest/planners.hpp"
#include "randtest/scalar_functions.hpp"
#include "randtest/simulate.hpp"
#include "randtest/version.hpp"

namespace {

using namespace randtest;

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Flat insertion-ordered JSON record.
class Record {
 public:
  explicit Record(const std::string& command) {
    add_str("command", command);
  }
  void add_str(const std::string& key, const std::string& v) {
    entries_.push_back({key, "\"" + v + "\""});
  }
  void add_int(const std::string& key, long long v) {
    entries_.push_back({key, std::to_string(v)});
  }
  void add_real(const std::string& key, double v) {
    if (std::isnan(v)) {
      entries_.push_back({key, "null"});
    } else if (std::isinf(v)) {
      entries_.push_back({key, v > 0 ? "\"inf\"" : "\"-inf\""});
    } else {
      entries_.push_back({key, fmt12(v)});
    }
  }
  void add_bool(const std::string& key, bool v) {
    entries_.push_back({key, v ? "true" : "false"});
  }
  void print() const {
    std::string out = "{";
    for (size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += ',';
      out += "\"" + entries_[i].first + "\":" + entries_[i].second;
    }
    out += ",\"version\":\"";
    out += kVersion;
    out += "\"}";
    std::puts(out.c_str());
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::int64_t ceil_budget(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-9 * std::max(1.0, std::abs(x))) {
    return std::int64_t(r);
  }
  return std::int64_t(std::ceil(x));
}

struct UclArgs {
  std::int64_t n = 0;
  std::int64_t l = 0;
  double delta = 0.0;
  double lambda = 0.0;
  std::int64_t iid_k = -1;
  bool with_bounds = false;
  bool with_oracle = false;
};

int run_ucl(const UclArgs& a) {
  Record rec("ucl");
  rec.add_int("n", a.n);
  rec.add_real("delta", a.delta);
  if (a.iid_k >= 0) {
    rec.add_int("k", a.iid_k);
    const auto cb = ucl_iid_exact(a.iid_k, a.n, a.delta);
    rec.add_real("eps_bar", cb.epsilon_bar);
    rec.add_real("complement", cb.complement);
    rec.add_str("method", method_name(cb.method));
    rec.print();
    return 0;
  }
  rec.add_int("l", a.l);
  rec.add_real("lambda", a.lambda);
  TestDesign design{a.n, a.l, a.delta, a.lambda};
  const auto cb = ucl_exact(design);
  rec.add_real("eps_bar", cb.epsilon_bar);
  rec.add_real("complement", cb.complement);
  rec.add_str("method", method_name(cb.method));
  if (cb.z_hat) rec.add_int("z_hat", *cb.z_hat);
  if (a.with_bounds) {
    const auto sw = ucl_sandwich(design);
    rec.add_real("complement_lower", sw.complement_lower);
    rec.add_real("complement_upper", sw.complement_upper);
  }
  if (a.with_oracle) {
    rec.add_real("oracle_eps_bar", ucl_oracle_lp(design).epsilon_bar);
  }
  rec.print();
  return 0;
}

struct PlanArgs {
  std::string regime;
  double s = -1.0;
  std::int64_t k0 = -1;
  double eps = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
  bool iid = false;
  bool asymptotic = false;
};

int run_plan(const PlanArgs& a) {
  Record rec("plan");
  rec.add_str("regime", a.regime);
  rec.add_real("eps", a.eps);
  rec.add_real("delta", a.delta);
  if (a.regime == "constant") {
    if (a.k0 < 0) throw std::domain_error("--k0 is required for the constant regime");
    rec.add_int("k0", a.k0);
    if (a.iid) {
      rec.add_str("mode", "iid");
      if (a.asymptotic) {
        rec.add_real("n", plan_asym::n_constant_iid(a.k0, a.eps, a.delta));
        rec.add_str("method", "asymptotic");
      } else {
        const auto res = min_n_iid_constant_exact(a.k0, a.eps, a.delta);
        rec.add_int("n", res.value);
        rec.add_str("method", plan_method_name(res.how));
        if (res.certificate) {
          rec.add_real("eps_bar_at_n", res.certificate->first);
          rec.add_real("eps_bar_at_n_minus_1", res.certificate->second);
        }
      }
    } else {
      rec.add_real("lambda", a.lambda);
      const std::int64_t l =
          a.lambda > 0.0 ? ceil_budget((1.0 - a.lambda) * double(a.k0)) : a.k0;
      rec.add_int("l", l);
      if (a.asymptotic) {
        const double n = a.lambda > 0.0
                             ? plan_asym::n_constant_randomized(a.k0, a.eps,
                                                                a.delta, a.lambda)
                             : plan_asym::n_constant_lambda0(a.k0, a.eps, a.delta);
        rec.add_real("n", n);
        rec.add_str("method", "asymptotic");
      } else {
        const auto res = min_n_constant_exact(l, a.eps, a.delta, a.lambda);
        rec.add_int("n", res.value);
        rec.add_str("method", plan_method_name(res.how));
        if (res.certificate) {
          rec.add_real("eps_bar_at_n", res.certificate->first);
          rec.add_real("eps_bar_at_n_minus_1", res.certificate->second);
        }
      }
    }
  } else if (a.regime == "linear") {
    if (a.s < 0.0) throw std::domain_error("--s is required for the linear regime");
    rec.add_real("s", a.s);
    if (a.iid) {
      rec.add_str("mode", "iid");
      if (a.asymptotic) {
        rec.add_real("n", plan_asym::n_linear_iid(a.s, a.eps, a.delta));
        rec.add_str("method", "asymptotic");
      } else {
        const auto res = min_n_iid_linear_exact(a.s, a.eps, a.delta);
        rec.add_int("n", res.value);
        rec.add_str("method", plan_method_name(res.how));
        if (res.certificate) {
          rec.add_real("eps_bar_at_n", res.certificate->first);
          rec.add_real("eps_bar_at_n_minus_1", res.certificate->second);
        }
      }
    } else {
      rec.add_real("lambda", a.lambda);
      if (a.asymptotic) {
        rec.add_real("n", plan_asym::n_linear_randomized(a.s, a.eps, a.delta,
                                                         a.lambda));
        rec.add_str("method", "asymptotic");
      } else {
        const auto res = min_n_linear_exact(a.s, a.eps, a.delta, a.lambda);
        rec.add_int("n", res.value);
        rec.add_str("method", plan_method_name(res.how));
        if (res.certificate) {
          rec.add_real("eps_bar_at_n", res.certificate->first);
          rec.add_real("eps_bar_at_n_minus_1", res.certificate->second);
        }
      }
    }
  } else {
    throw std::domain_error("regime must be 'linear' or 'constant'");
  }
  rec.print();
  return 0;
}

struct MaxFailArgs {
  std::int64_t n = 0;
  double eps = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
  bool iid = false;
};

int run_max_failures(const MaxFailArgs& a) {
  Record rec("max-failures");
  rec.add_int("n", a.n);
  rec.add_real("eps", a.eps);
  rec.add_real("delta", a.delta);
  if (!a.iid) rec.add_real("lambda", a.lambda);
  rec.add_str("mode", a.iid ? "iid" : "randomized");
  const auto res = max_failures_exact(
      a.n, a.eps, a.delta, a.lambda,
      a.iid ? TestMode::iid : TestMode::randomized);
  rec.add_bool("feasible", res.has_value());
  if (res) {
    rec.add_int("l", res->value);
    rec.add_str("method", plan_method_name(res->how));
    if (res->certificate) {
      rec.add_real("eps_bar_at_l", res->certificate->first);
      rec.add_real("eps_bar_at_l_plus_1", res->certificate->second);
    }
  }
  rec.print();
  return 0;
}

struct DetectArgs {
  double theta0 = 0.0;
  double gap = 0.0;
  double delta = 0.0;
  double lambda = -1.0;
  bool optimal = false;
  double p0 = -1.0;
};

int run_detect(const DetectArgs& a) {
  Record rec("detect");
  rec.add_real("theta0", a.theta0);
  rec.add_real("delta", a.delta);
  rec.add_real("gap", a.gap);
  double lambda = a.lambda;
  if (a.optimal) {
    const auto opt = optimal_lambda_detection(a.theta0, a.gap, a.delta);
    lambda = opt.lambda0;
    rec.add_real("lambda_opt", opt.lambda0);
    rec.add_real("kappa", opt.kappa_value);
  } else {
    if (lambda < 0.0) throw std::domain_error("provide --lambda or --optimal");
    rec.add_real("lambda", lambda);
  }
  DetectionSetting setting;
  setting.theta0 = a.theta0;
  setting.delta = a.delta;
  setting.e = a.gap;
  setting.t = 0.0;
  setting.lambda = lambda;
  rec.add_real("prob_randomized", detect_prob(setting, TestMode::randomized));
  rec.add_real("prob_iid", detect_prob(setting, TestMode::iid));
  rec.add_real("threshold_randomized",
               detect_threshold(setting, TestMode::randomized));
  rec.add_real("threshold_iid", detect_threshold(setting, TestMode::iid));
  if (a.p0 >= 0.0) {
    rec.add_real("p0", a.p0);
    rec.add_real("required_gap", required_gap(a.theta0, a.delta, lambda, a.p0));
  }
  rec.print();
  return 0;
}

struct SimArgs {
  std::string truth;
  std::int64_t n = 0;
  std::int64_t l = 0;
  double delta = -1.0;  // optional; the draw itself never uses it
  double lambda = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

int run_simulate(const SimArgs& a) {
  TruthSpec truth;
  const auto colon = a.truth.find(':');
  if (colon == std::string::npos) {
    throw std::domain_error("truth must be vertex:<z> or iid:<theta>");
  }
  const std::string kind = a.truth.substr(0, colon);
  const std::string arg = a.truth.substr(colon + 1);
  if (kind == "vertex") {
    truth = TruthSpec::vertex(std::stoll(arg));
  } else if (kind == "iid") {
    truth = TruthSpec::iid(std::stod(arg));
  } else {
    throw std::domain_error("truth must be vertex:<z> or iid:<theta>");
  }
  const bool has_delta = a.delta >= 0.0;
  TestDesign design{a.n, a.l, has_delta ? a.delta : 1.0, a.lambda};
  const auto out = simulate_protocol(truth, design, a.trials, a.seed);
  Record rec("simulate");
  rec.add_str("truth", a.truth);
  rec.add_int("n", a.n);
  rec.add_int("l", a.l);
  if (has_delta) rec.add_real("delta", a.delta);
  rec.add_real("lambda", a.lambda);
  rec.add_int("trials", out.trials);
  rec.add_int("seed", (long long)out.seed);
  rec.add_int("accept_count", out.accept_count);
  rec.add_int("joint_fail_count", out.joint_fail_count);
  rec.add_real("p_accept", out.p_accept);
  rec.add_real("p_fail_given_accept", out.p_fail_given_accept);
  rec.add_real("std_err_accept", out.std_err_accept);
  rec.add_real("std_err_cond", out.std_err_cond);
  if (has_delta) rec.add_real("eps_bar", ucl_exact(design).epsilon_bar);
  rec.print();
  return 0;
}

struct CurveArgs {
  std::string figure;
  std::string format = "csv";
  std::string out;
};

int run_curve(const CurveArgs& a) {
  const auto fig = curves::figure_from_name(a.figure);
  if (!fig) {
    throw std::domain_error(
        "figure must be one of const-ucl, linear-ucl, opt-lambda, detect-prob");
  }
  if (a.format != "csv" && a.format != "json") {
    throw std::domain_error("format must be csv or json");
  }
  const auto format =
      a.format == "csv" ? curves::Format::csv : curves::Format::json;
  const std::string data = curves::generate(*fig, format);

  std::string path = a.out;
  if (path.empty()) {
    std::string dir = ".";
    if (const char* env = std::getenv("RANDTEST_OUT_DIR")) dir = env;
    path = dir + "/" + a.figure + "." + a.format;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output file: " << path << "\n";
    return 1;
  }
  file << data;
  if (!file.good()) {
    std::cerr << "error: write failed: " << path << "\n";
    return 1;
  }
  file.close();
  Record rec("curve");
  rec.add_str("figure", a.figure);
  rec.add_str("format", a.format);
  rec.add_str("out", path);
  rec.add_int("bytes", (long long)data.size());
  rec.print();
  return 0;
}

struct VerifySuite {
  std::string name;
  long long checks = 0;
  long long failures = 0;
};

int run_verify(std::int64_t max_n) {
  std::vector<VerifySuite> suites;

  {
    VerifySuite s{"oracle-equivalence"};
    for (std::int64_t n = 1; n <= max_n; ++n) {
      for (std::int64_t l = 0; l < n; ++l) {
        for (double lambda : {0.1, 1.0 / std::exp(1.0), 0.9}) {
          for (int di = 1; di <= 19; ++di) {
            const double delta = 0.05 * di;
            TestDesign d{n, l, delta, lambda};
            ++s.checks;
            if (std::abs(ucl_exact(d).epsilon_bar -
                         ucl_oracle_lp(d).epsilon_bar) > 1e-9) {
              ++s.failures;
            }
          }
        }
      }
    }
    suites.push_back(s);
  }
  {
    VerifySuite s{"lambda0-closed-form"};
    for (std::int64_t n = 1; n <= max_n; ++n) {
      for (std::int64_t l = 0; l < n; ++l) {
        for (int di = 1; di <= 19; ++di) {
          const double delta = 0.05 * di;
          TestDesign d{n, l, delta, 0.0};
          ++s.checks;
          if (std::abs(ucl_exact(d).epsilon_bar -
                       ucl_oracle_lp(d).epsilon_bar) > 1e-12) {
            ++s.failures;
          }
        }
      }
    }
    suites.push_back(s);
  }
  {
    VerifySuite s{"schedule"};
    for (std::int64_t n = 1; n <= std::min<std::int64_t>(max_n, 30); ++n) {
      for (double lambda : {0.1, 0.5, 0.9}) {
        for (std::int64_t z = 0; z <= n + 1; ++z) {
          const auto sched = delta_z_schedule(n, lambda, z);
          ++s.checks;
          const double got =
              ucl_exact({n, 0, sched.delta_z, lambda}).epsilon_bar;
          if (std::abs(got - sched.ucl) > 1e-10) ++s.failures;
        }
      }
    }
    suites.push_back(s);
  }
  {
    VerifySuite s{"monotonicity"};
    const std::int64_t cap = std::min<std::int64_t>(max_n, 25);
    for (double lambda : {0.0, 0.3, 0.7}) {
      for (std::int64_t n = 1; n <= cap; ++n) {
        for (std::int64_t l = 0; l < n; ++l) {
          double prev = 2.0;
          for (int di = 1; di <= 19; ++di) {
            const double delta = 0.05 * di;
            const double v = ucl_exact({n, l, delta, lambda}).epsilon_bar;
            ++s.checks;
            if (v > prev + 1e-12) ++s.failures;  // nonincreasing in delta
            prev = v;
            if (l < n - 1) {
              ++s.checks;
              if (ucl_exact({n, l + 1, delta, lambda}).epsilon_bar <
                  v - 1e-12) {
                ++s.failures;  // nondecreasing in l
              }
            }
            ++s.checks;
            if (ucl_exact({n + 1, l, delta, lambda}).epsilon_bar >
                v + 1e-12) {
              ++s.failures;  // nonincreasing in n
            }
          }
        }
      }
    }
    suites.push_back(s);
  }
  {
    VerifySuite s{"sandwich-bounds"};
    const std::int64_t cap = std::min<std::int64_t>(max_n, 25);
    for (double lambda : {0.1, 0.5, 0.9}) {
      for (std::int64_t n = 1; n <= cap; ++n) {
        for (std::int64_t l = 0; l < n; ++l) {
          for (int di = 1; di <= 19; ++di) {
            const double delta = 0.05 * di;
            TestDesign d{n, l, delta, lambda};
            const auto sw = ucl_sandwich(d);
            const double comp = ucl_exact(d).complement;
            ++s.checks;
            if (comp < sw.complement_lower - 1e-9 ||
                comp > sw.complement_upper + 1e-9) {
              ++s.failures;
            }
          }
        }
      }
    }
    suites.push_back(s);
  }
  {
    VerifySuite s{"ratio-bounds"};
    const std::int64_t cap = std::min<std::int64_t>(2 * max_n, 40);
    for (double lambda : {0.1, 0.5, 0.9}) {
      const double nu = 1.0 - lambda;
      for (std::int64_t z = 0; z <= cap; ++z) {
        for (std::int64_t l = 0; l <= z; ++l) {
          const double ratio = binom_cdf(z, l, nu) / binom_cdf(z + 1, l, nu);
          ++s.checks;
          const double lower = double(z - l + 1) / (double(z + 1) * lambda);
          if (ratio < lower - 1e-9 || ratio > 1.0 / lambda + 1e-9) {
            ++s.failures;
          }
        }
      }
    }
    suites.push_back(s);
  }

  long long total_failures = 0;
  for (const auto& s : suites) {
    std::printf("%-22s checks=%lld failures=%lld %s\n", s.name.c_str(),
                s.checks, s.failures, s.failures == 0 ? "PASS" : "FAIL");
    total_failures += s.failures;
  }
  std::printf("verify: %s\n", total_failures == 0 ? "PASS" : "FAIL");
  return total_failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact, bounded, and asymptotic upper confidence limits for "
               "randomized one-sided tests under sampling without replacement"};
  app.require_subcommand(1);

  UclArgs ucl_args;
  auto* ucl_cmd = app.add_subcommand("ucl", "Upper confidence limit");
  ucl_cmd->add_option("--n", ucl_args.n, "observations")->required();
  ucl_cmd->add_option("--l", ucl_args.l, "failure budget");
  ucl_cmd->add_option("--delta", ucl_args.delta, "significance level")->required();
  ucl_cmd->add_option("--lambda", ucl_args.lambda, "randomization parameter");
  ucl_cmd->add_option("--iid", ucl_args.iid_k, "iid baseline with budget k");
  ucl_cmd->add_flag("--bounds", ucl_args.with_bounds, "include sandwich bounds");
  ucl_cmd->add_flag("--oracle", ucl_args.with_oracle, "include LP oracle value");

  PlanArgs plan_args;
  auto* plan_cmd = app.add_subcommand("plan", "Minimum sample size");
  plan_cmd->add_option("--regime", plan_args.regime, "linear|constant")->required();
  plan_cmd->add_option("--s", plan_args.s, "linear failure fraction");
  plan_cmd->add_option("--k0", plan_args.k0, "constant budget parameter");
  plan_cmd->add_option("--eps", plan_args.eps, "target confidence limit")->required();
  plan_cmd->add_option("--delta", plan_args.delta, "significance level")->required();
  plan_cmd->add_option("--lambda", plan_args.lambda, "randomization parameter");
  plan_cmd->add_flag("--iid", plan_args.iid, "iid baseline");
  plan_cmd->add_flag("--asymptotic", plan_args.asymptotic, "leading-order formula");

  MaxFailArgs mf_args;
  auto* mf_cmd = app.add_subcommand("max-failures", "Maximum failure budget");
  mf_cmd->add_option("--n", mf_args.n, "observations")->required();
  mf_cmd->add_option("--eps", mf_args.eps, "target confidence limit")->required();
  mf_cmd->add_option("--delta", mf_args.delta, "significance level")->required();
  mf_cmd->add_option("--lambda", mf_args.lambda, "randomization parameter");
  mf_cmd->add_flag("--iid", mf_args.iid, "iid baseline");

  DetectArgs det_args;
  auto* det_cmd = app.add_subcommand("detect", "Detection probability");
  det_cmd->add_option("--theta0", det_args.theta0, "baseline failure rate")->required();
  det_cmd->add_option("--gap", det_args.gap, "target offset e - t")->required();
  det_cmd->add_option("--delta", det_args.delta, "significance level")->required();
  det_cmd->add_option("--lambda", det_args.lambda, "randomization parameter");
  det_cmd->add_flag("--optimal", det_args.optimal, "use the optimal lambda");
  det_cmd->add_option("--p0", det_args.p0, "target detection probability");

  SimArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo protocol run");
  sim_cmd->add_option("--truth", sim_args.truth, "vertex:<z> or iid:<theta>")->required();
  sim_cmd->add_option("--n", sim_args.n, "observations")->required();
  sim_cmd->add_option("--l", sim_args.l, "failure budget");
  sim_cmd->add_option("--delta", sim_args.delta,
                      "significance level (echo only; optional)");
  sim_cmd->add_option("--lambda", sim_args.lambda, "randomization parameter");
  sim_cmd->add_option("--trials", sim_args.trials, "number of trials")->required();
  sim_cmd->add_option("--seed", sim_args.seed, "RNG seed")->required();

  std::int64_t verify_max_n = 20;
  auto* verify_cmd = app.add_subcommand("verify", "Run self-check suites");
  verify_cmd->add_option("--max-n", verify_max_n, "grid cap (default 20)");

  CurveArgs curve_args;
  auto* curve_cmd = app.add_subcommand("curve", "Figure dataset generation");
  curve_cmd->add_option("--figure", curve_args.figure,
                        "const-ucl|linear-ucl|opt-lambda|detect-prob")->required();
  curve_cmd->add_option("--format", curve_args.format, "csv|json");
  curve_cmd->add_option("--out", curve_args.out, "output path");

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(ucl_cmd)) return run_ucl(ucl_args);
    if (app.got_subcommand(plan_cmd)) return run_plan(plan_args);
    if (app.got_subcommand(mf_cmd)) return run_max_failures(mf_args);
    if (app.got_subcommand(det_cmd)) return run_detect(det_args);
    if (app.got_subcommand(sim_cmd)) return run_simulate(sim_args);
    if (app.got_subcommand(verify_cmd)) return run_verify(verify_max_n);
    if (app.got_subcommand(curve_cmd)) return run_curve(curve_args);
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const randtest::infeasible_error& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  }
}

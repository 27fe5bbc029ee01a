#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "fairwage/distributions.hpp"
#include "fairwage/error.hpp"
#include "fairwage/fairpay.hpp"
#include "fairwage/ingestion.hpp"
#include "fairwage/maxent.hpp"
#include "fairwage/numerics.hpp"
#include "fairwage/report.hpp"

namespace fairwage::cli {

namespace {

using report::Format;

class UsageError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

constexpr double kVerifyTolerance = 1e-6;

std::set<std::string> to_set(const std::vector<std::string>& names) {
  std::set<std::string> out;
  for (const auto& n : names) {
    if (!n.empty()) out.insert(n);
  }
  return out;
}

Format format_or_usage(const std::string& name) {
  try {
    return report::parse_format(name);
  } catch (const ContractError& e) {
    throw UsageError(e.what());
  }
}

fairpay::Scenario scenario_or_usage(double min_salary, double mean_salary) {
  try {
    return ingestion::make_scenario(min_salary, mean_salary);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

// Runs `body` with a stream for `path`, where "-" is the caller's stdin.
template <typename Body>
auto with_input(const std::string& path, std::istream& stdin_stream, Body&& body) {
  if (path == "-") return body(stdin_stream);
  std::ifstream file(path);
  if (!file) throw InputError("cannot open '" + path + "'");
  return body(file);
}

struct TablesOptions {
  double min_salary = 0.0;
  double mean_salary = 0.0;
  std::string format = "md";
  std::vector<std::string> exclude;
};

int reproduce_tables(const TablesOptions& opt, bool exclude_given, std::ostream& out) {
  if (opt.min_salary != ingestion::kMinimumWageSalary &&
      opt.min_salary != ingestion::kTypicalMinimumSalary) {
    throw UsageError("--min-salary must be 13100 or 25000 for table reproduction");
  }
  bool known_mean = false;
  for (double m : ingestion::kScenarioMeans) known_mean |= (m == opt.mean_salary);
  if (!known_mean) {
    throw UsageError("--mean-salary must be one of 40000, 60000, 80000, 100000");
  }
  const auto exclude =
      exclude_given ? to_set(opt.exclude) : std::set<std::string>{std::string(ingestion::kBerkshire)};
  const auto& bundle = ingestion::load_bundled_dataset();
  const auto doc =
      report::build_report(bundle.companies, scenario_or_usage(opt.min_salary, opt.mean_salary),
                           exclude, format_or_usage(opt.format));
  report::render(doc, out);
  return kSuccess;
}

int analyze(const std::string& path, const TablesOptions& opt, std::istream& in,
            std::ostream& out) {
  const auto format = format_or_usage(opt.format);
  const auto scenario = scenario_or_usage(opt.min_salary, opt.mean_salary);
  const auto companies =
      with_input(path, in, [](std::istream& s) { return ingestion::parse_company_csv(s); });
  const auto exclude = to_set(opt.exclude);
  try {
    report::render(report::build_report(companies, scenario, exclude, format), out);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return kSuccess;
}

struct VerifyOptions {
  double mu = 0.0;
  double sigma = 1.0;
  std::size_t grid_points = maxent::kDefaultGridPoints;
  double tol = maxent::kDefaultTolerance;
  int max_iter = maxent::kDefaultMaxIterations;
};

int maxent_verify(const VerifyOptions& opt, std::ostream& out) {
  std::optional<maxent::MomentConstraints> constraints;
  std::optional<numerics::Grid> grid;
  try {
    constraints.emplace(opt.mu, opt.sigma);
    grid.emplace(maxent::default_grid(*constraints, opt.grid_points));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (!(opt.tol > 0.0) || opt.max_iter < 1) {
    throw UsageError("--tol must be positive and --max-iter at least 1");
  }
  const auto sol = maxent::solve_maxent(*constraints, *grid, opt.tol, opt.max_iter);

  const distributions::LognormalParams params(opt.mu, opt.sigma);
  const double closed_entropy = distributions::lognormal_entropy(params);
  const double entropy_error = std::fabs(sol.entropy - closed_entropy);
  const double s2 = opt.sigma * opt.sigma;
  const double expected_l1 = opt.mu / s2;
  const double expected_l2 = -1.0 / (2.0 * s2);
  const auto rel = [](double got, double want) {
    return want == 0.0 ? std::fabs(got) : std::fabs(got - want) / std::fabs(want);
  };
  const double l1_error = rel(sol.multipliers.lambda1, expected_l1);
  const double l2_error = rel(sol.multipliers.lambda2, expected_l2);

  double density_error = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const double z = (grid->point(i) - opt.mu) / opt.sigma;
    const double exact = numerics::std_normal_pdf(z) / opt.sigma;
    if (exact > 1e-12) density_error = std::max(density_error, rel(sol.density[i], exact));
  }
  const bool ok = entropy_error < kVerifyTolerance && density_error < kVerifyTolerance &&
                  l1_error < kVerifyTolerance && l2_error < kVerifyTolerance;

  out << fmt::format("constraints           E[ln S] = {}, sd(ln S) = {}\n", opt.mu, opt.sigma);
  out << fmt::format("grid                  [{}, {}] x {}\n", grid->lo(), grid->hi(),
                     grid->size());
  out << fmt::format("iterations            {}\n", sol.iterations);
  out << fmt::format("residual              {:.3e}\n", sol.residual);
  out << fmt::format("lambda0               {:.12g}\n", sol.multipliers.lambda0);
  out << fmt::format("lambda1               {:.12g} (closed form {:.12g}, rel error {:.3e})\n",
                     sol.multipliers.lambda1, expected_l1, l1_error);
  out << fmt::format("lambda2               {:.12g} (closed form {:.12g}, rel error {:.3e})\n",
                     sol.multipliers.lambda2, expected_l2, l2_error);
  out << fmt::format("moments               m0 = {:.12g}, m1 = {:.12g}, m2 = {:.12g}\n",
                     sol.achieved_moments.m0, sol.achieved_moments.m1, sol.achieved_moments.m2);
  out << fmt::format("entropy               {:.9f} (closed form {:.9f}, error {:.3e})\n",
                     sol.entropy, closed_entropy, entropy_error);
  out << fmt::format("density sup rel error {:.3e}\n", density_error);
  out << "status                " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kSuccess : kNoConvergence;
}

struct FitOptions {
  double bottom_fraction = fairpay::kDefaultBottomFraction;
  std::string format = "md";
  std::optional<double> tail_area;
};

int fit(const std::string& path, const FitOptions& opt, std::istream& in, std::ostream& out) {
  const auto format = format_or_usage(opt.format);
  if (format == Format::csv) throw UsageError("fit reports are md or json");
  if (!(opt.bottom_fraction > 0.0 && opt.bottom_fraction <= 1.0)) {
    throw UsageError("--bottom-fraction must lie in (0, 1]");
  }
  if (opt.tail_area && !(*opt.tail_area > 0.0 && *opt.tail_area < 1.0)) {
    throw UsageError("--tail-area must lie in (0, 1)");
  }
  const auto sample = with_input(path, in, [&](std::istream& s) {
    return ingestion::parse_wage_csv(s, path == "-" ? "stdin" : path);
  });
  const auto params = fairpay::fit_lognormal(sample, opt.bottom_fraction);
  const auto fairness = fairpay::fairness_index(sample, params);
  const numerics::Probability tail(opt.tail_area.value_or(1.0 / static_cast<double>(sample.size())));
  const double z = numerics::std_normal_quantile(tail.complement());
  const double ideal_top = std::exp(params.mu() + z * params.sigma());
  const double mean = distributions::lognormal_mean(params);
  const double variance = distributions::lognormal_variance(params);
  const double entropy = distributions::lognormal_entropy(params);

  if (format == Format::json) {
    nlohmann::ordered_json j;
    j["source"] = sample.source();
    j["n"] = sample.size();
    j["bottom_fraction"] = opt.bottom_fraction;
    j["mu"] = params.mu();
    j["sigma"] = params.sigma();
    j["mean"] = mean;
    j["variance"] = variance;
    j["entropy"] = entropy;
    j["fairness"] = {{"entropy_gap", fairness.entropy_gap},
                     {"kl_divergence", fairness.kl_divergence},
                     {"bins", fairness.bins}};
    j["top"] = {{"tail_area", tail.value()}, {"z", z}, {"ideal_salary", ideal_top}};
    out << j.dump(2) << '\n';
    return kSuccess;
  }
  out << fmt::format("source                {} ({} salaries)\n", sample.source(), sample.size());
  out << fmt::format("bottom fraction       {}\n", opt.bottom_fraction);
  out << fmt::format("mu (E[ln S])          {:.6f}\n", params.mu());
  out << fmt::format("sigma (sd of ln S)    {:.6f}\n", params.sigma());
  out << fmt::format("mean salary           {:.2f}\n", mean);
  out << fmt::format("salary variance       {:.6e}\n", variance);
  out << fmt::format("entropy               {:.6f} nats\n", entropy);
  out << fmt::format("entropy gap           {:.6f} nats\n", fairness.entropy_gap);
  out << fmt::format("KL(sample || fit)     {:.6f} nats ({} bins)\n", fairness.kl_divergence,
                     fairness.bins);
  out << fmt::format("top position          tail area {:.8g}, z {:.2f}\n", tail.value(), z);
  out << fmt::format("ideal top salary      {:.2f}\n", ideal_top);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Fair pay analysis under the maximum-entropy (lognormal) wage model", "fairwage"};
  app.require_subcommand(1);

  TablesOptions tables;
  auto* reproduce = app.add_subcommand("reproduce-tables",
                                       "Ideal vs actual CEO pay ratios for the bundled 2008 data");
  reproduce->add_option("--min-salary", tables.min_salary, "13100 or 25000")->required();
  reproduce->add_option("--mean-salary", tables.mean_salary, "40000, 60000, 80000 or 100000")
      ->required();
  reproduce->add_option("--format", tables.format, "md, csv or json")->capture_default_str();
  auto* reproduce_exclude =
      reproduce->add_option("--exclude", tables.exclude, "Companies left out of the average")
          ->delimiter(',');

  TablesOptions analysis;
  std::string analyze_path;
  auto* analyze_cmd = app.add_subcommand("analyze", "Pay ratios for a company CSV roster");
  analyze_cmd->add_option("path", analyze_path, "Company CSV ('-' for stdin)")->required();
  analyze_cmd->add_option("--min-salary", analysis.min_salary)->required();
  analyze_cmd->add_option("--mean-salary", analysis.mean_salary)->required();
  analyze_cmd->add_option("--format", analysis.format, "md, csv or json")->capture_default_str();
  analyze_cmd->add_option("--exclude", analysis.exclude, "Companies left out of the average")
      ->delimiter(',');

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand(
      "maxent-verify", "Solve the log-moment maximum-entropy problem and compare with the lognormal");
  verify_cmd->add_option("--mu", verify.mu, "E[ln S]")->capture_default_str();
  verify_cmd->add_option("--sigma", verify.sigma, "sd of ln S")->capture_default_str();
  verify_cmd->add_option("--grid-points", verify.grid_points)->capture_default_str();
  verify_cmd->add_option("--tol", verify.tol)->capture_default_str();
  verify_cmd->add_option("--max-iter", verify.max_iter)->capture_default_str();

  FitOptions fit_opt;
  std::string fit_path;
  double tail_area = 0.0;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a lognormal to the body of a wage sample");
  fit_cmd->add_option("path", fit_path, "Wage CSV ('-' for stdin)")->required();
  fit_cmd->add_option("--bottom-fraction", fit_opt.bottom_fraction)->capture_default_str();
  fit_cmd->add_option("--format", fit_opt.format, "md or json")->capture_default_str();
  auto* tail_opt = fit_cmd->add_option("--tail-area", tail_area,
                                       "Upper tail area of the top position (default 1/n)");

  std::string dump_format = "csv";
  auto* dataset = app.add_subcommand("dataset", "Bundled dataset");
  dataset->require_subcommand(1);
  auto* dump = dataset->add_subcommand("dump", "Print the bundled companies");
  dump->add_option("--format", dump_format, "csv, json or md")->capture_default_str();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("fairwage");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*reproduce) return reproduce_tables(tables, reproduce_exclude->count() > 0, out);
    if (*analyze_cmd) return analyze(analyze_path, analysis, in, out);
    if (*verify_cmd) return maxent_verify(verify, out);
    if (*fit_cmd) {
      if (tail_opt->count() > 0) fit_opt.tail_area = tail_area;
      return fit(fit_path, fit_opt, in, out);
    }
    if (*dump) {
      report::render_companies(ingestion::load_bundled_dataset().companies,
                               format_or_usage(dump_format), out);
      return kSuccess;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const Error& e) {
    // Parse, validation, insufficient data and unreadable input.
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kUsage;
}

}  // namespace fairwage::cli

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dchaos/errors.hpp"
#include "dchaos/frechet.hpp"
#include "dchaos/mittag_leffler.hpp"
#include "dchaos/scenario.hpp"

namespace {

using dchaos::Complex;
using dchaos::format_number;

constexpr int kUsage = 1;

// "re" or "re,im".
Complex parse_complex(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0;
  double im = 0.0;
  char comma = 0;
  in >> re;
  if (!in) throw CLI::ValidationError("complex", "cannot parse '" + text + "' (use re or re,im)");
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw CLI::ValidationError("complex", "cannot parse '" + text + "'");
  }
  return {re, im};
}

std::string complex_text(Complex z) {
  if (z.imag() == 0.0) return format_number(z.real());
  return format_number(z.real()) + "," + format_number(z.imag());
}

int cmd_ml_eval(double beta, const std::string& z_text, bool verbose) {
  dchaos::MLParams params;
  params.beta = beta;
  const dchaos::MLValue v = dchaos::ml_eval(params, parse_complex(z_text));
  std::cout << complex_text(v.value) << "\n";
  if (verbose) {
    std::cout << "branch " << (v.branch == dchaos::MLBranch::Series ? "series" : "asymptotic") << "\n";
    std::cout << "error_estimate " << format_number(v.error_estimate) << "\n";
    std::cout << "converged " << (v.converged ? "true" : "false") << "\n";
  }
  return 0;
}

int cmd_density(const std::string& path, const std::string& mode, double tail_window) {
  std::ifstream in(path);
  if (!in) dchaos::fail(dchaos::ErrorKind::Io, "cannot open '" + path + "'");
  std::vector<double> times;
  std::vector<bool> member;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || (line_no == 1 && line.find_first_of("0123456789") != 0)) continue;
    std::istringstream row(line);
    double t = 0.0;
    double m = 0.0;
    char comma = 0;
    if (!(row >> t >> comma >> m) || comma != ',') {
      dchaos::fail(dchaos::ErrorKind::Schema, path + ":" + std::to_string(line_no) + ": expected t,member");
    }
    times.push_back(t);
    member.push_back(m != 0.0);
  }
  const auto trace = mode == "discrete" ? dchaos::IndicatorTrace::discrete(member)
                                        : dchaos::IndicatorTrace::continuous(times, member);
  const dchaos::DensityEstimate est = dchaos::density_profile(trace, tail_window);
  std::cout << "upper_estimate " << format_number(est.upper_estimate) << "\n";
  std::cout << "horizon " << format_number(est.horizon) << "\n";
  std::cout << "tail_window " << format_number(est.tail_window) << "\n";
  return 0;
}

std::vector<double> parse_times(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--times", "cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw CLI::ValidationError("--times", "needs at least one time");
  return out;
}

struct OrbitArgs {
  std::string config;
  std::string family;
  std::string vector;
  std::string eigenvalue;
  std::string times;
};

int cmd_orbit(const OrbitArgs& args) {
  const std::vector<double> times = parse_times(args.times);
  if (!args.eigenvalue.empty()) {
    // First-order family with Q(z) = z on the eigenvector at mu = lambda.
    const Complex lambda = parse_complex(args.eigenvalue);
    dchaos::FamilySpec spec;
    spec.name = "inline";
    const dchaos::SpectralVector x = dchaos::SpectralVector::eigenvector(lambda);
    std::cout << "t,ratio\n";
    for (double t : times) {
      const auto y = dchaos::eigen_orbit_first_order(spec, x, t);
      std::cout << format_number(t) << "," << complex_text(y.entries().begin()->second) << "\n";
    }
    return 0;
  }
  if (args.config.empty() || args.family.empty() || args.vector.empty()) {
    throw CLI::ValidationError("orbit", "give --eigenvalue, or --config with --family and --vector");
  }
  const dchaos::ScenarioConfig config = dchaos::load_scenario(args.config);
  const dchaos::FamilySpec& family = config.family(args.family, "--family");
  const dchaos::Element& x = config.vector(args.vector, "--vector").value;
  const dchaos::SeminormFamily seminorms = family.seminorms(x, config.detection.n_max);
  std::cout << "t,distance,seminorm\n";
  for (double t : times) {
    const dchaos::Element y = dchaos::orbit(family, x, t);
    std::cout << format_number(t) << "," << format_number(dchaos::distance_to_zero(seminorms, y).value) << ","
              << format_number(seminorms(config.detection.m, y)) << "\n";
  }
  return 0;
}

bool is_identity_task(const std::string& type) {
  return type == "resolvent_identity" || type == "integrated_identity" || type == "block_identity" ||
         type == "product_check" || type == "matrix_eigen";
}

int cmd_verify(const std::string& path) {
  dchaos::ScenarioConfig config = dchaos::load_scenario(path);
  nlohmann::ordered_json kept = nlohmann::ordered_json::array();
  for (const auto& task : config.tasks) {
    if (is_identity_task(task["type"].get<std::string>())) kept.push_back(task);
  }
  if (kept.empty()) {
    std::cout << "no identity tasks in " << config.scenario << "\n";
    return 0;
  }
  config.tasks = kept;
  const dchaos::ScenarioResult result = dchaos::run_scenario(config, {});
  std::cout << "task,t,step,residual,status\n";
  for (const auto& task : result.report["tasks"]) {
    const std::string id = task["id"].get<std::string>();
    const std::string status = task["status"].get<std::string>();
    if (!task.contains("rows")) {
      std::cout << id << ",,,," << status << "\n";
      continue;
    }
    for (const auto& row : task["rows"]) {
      auto field = [&](const char* key) {
        return row.contains(key) ? format_number(row[key].get<double>()) : std::string();
      };
      const std::string step = row.contains("quad_step") ? field("quad_step") : field("step");
      std::cout << id << "," << (row.contains("h") ? field("h") : field("t")) << "," << step << ","
                << field("residual") << "," << status << "\n";
    }
  }
  return result.exit_code;
}

struct DetectArgs {
  std::string config;
  std::string out = "dchaos_out";
  std::optional<double> horizon;
  unsigned long long seed = 20240101;
  int threads = 1;
};

int cmd_detect(const DetectArgs& args) {
  const dchaos::ScenarioConfig config = dchaos::load_scenario(args.config);
  dchaos::RunOptions options;
  options.horizon = args.horizon;
  options.seed = args.seed;
  options.threads = args.threads;
  const dchaos::ScenarioResult result = dchaos::run_scenario(config, options);
  dchaos::write_outputs(result, args.out);
  std::cout << result.summary;
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of disjoint distributional chaos for operator families"};
  app.require_subcommand(1);

  double beta = 1.0;
  std::string z_text;
  bool verbose = false;
  auto* ml = app.add_subcommand("ml-eval", "Evaluate the Mittag-Leffler function E_beta(z)");
  ml->add_option("beta", beta, "Order beta > 0")->required();
  ml->add_option("z", z_text, "Argument, re or re,im")->required();
  ml->add_flag("--verbose", verbose, "Print branch and error estimate");

  std::string csv_in;
  std::string mode = "continuous";
  double tail_window = dchaos::kDefaultTailWindow;
  auto* density = app.add_subcommand("density", "Upper density of a sampled indicator (CSV t,member)");
  density->add_option("--csv-in", csv_in, "Input CSV")->required();
  density->add_option("--mode", mode, "continuous or discrete")->check(CLI::IsMember({"continuous", "discrete"}));
  density->add_option("--tail-window", tail_window, "Fraction of the horizon used for the limsup");

  OrbitArgs orbit_args;
  auto* orbit = app.add_subcommand("orbit", "Orbit of a vector under one family");
  orbit->add_option("--config", orbit_args.config, "Scenario config");
  orbit->add_option("--family", orbit_args.family, "Family name in the config");
  orbit->add_option("--vector", orbit_args.vector, "Vector name in the config");
  orbit->add_option("--eigenvalue", orbit_args.eigenvalue, "Eigenvector orbit for Q(z) = z at this lambda");
  orbit->add_option("--times", orbit_args.times, "Comma-separated times")->required();

  std::string verify_config;
  auto* verify = app.add_subcommand("verify-identities", "Residual table of the identity tasks of a scenario");
  verify->add_option("--config", verify_config, "Scenario config")->required();

  DetectArgs detect_args;
  auto* detect = app.add_subcommand("detect", "Run every task of a scenario and write reports");
  detect->add_option("--config", detect_args.config, "Scenario config")->required();
  detect->add_option("--out", detect_args.out, "Output directory");
  detect->add_option("--horizon", detect_args.horizon, "Override the sample plan horizon");
  detect->add_option("--seed", detect_args.seed, "Seed recorded for randomized sampling");
  detect->add_option("--threads", detect_args.threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*ml) return cmd_ml_eval(beta, z_text, verbose);
    if (*density) return cmd_density(csv_in, mode, tail_window);
    if (*orbit) return cmd_orbit(orbit_args);
    if (*verify) return cmd_verify(verify_config);
    if (*detect) return cmd_detect(detect_args);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const dchaos::Error& e) {
    std::cerr << "error (" << dchaos::to_string(e.kind()) << "): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsage;
}

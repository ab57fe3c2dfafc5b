#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include <CLI11.hpp>

namespace rosenopt::cli {

namespace {

double real_flag(const std::string& flag, const std::string& text) {
  try {
    return parse_real(text, flag.c_str());
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
}

template <typename Int>
Int int_flag(const std::string& flag, const std::string& text) {
  Int v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(flag + ": malformed integer '" + text + "'");
  }
  return v;
}

std::pair<double, double> pair_flag(const std::string& flag, const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw UsageError(flag + ": expected two comma-separated numbers, got '" + text + "'");
  }
  return {real_flag(flag, text.substr(0, comma)), real_flag(flag, text.substr(comma + 1))};
}

double positive_flag(const std::string& flag, const std::string& text) {
  const double v = real_flag(flag, text);
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(flag + " must be positive");
  return v;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  return file;
}

// Raw string values captured by CLI11; converted and validated afterwards so
// every error names its flag.
struct RawArgs {
  std::string method = "sd";
  std::string step;
  std::string kappa;
  std::string start;
  std::string eps;
  std::string max_iter;
  std::string blowup;
  std::string restart;
  std::string seed;
  std::string traj;
  std::string out;
  std::string x_range;
  std::string y_range;
  std::string resolution;
};

}  // namespace

CliConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Unconstrained minimization of Rosenbrock functions", "rosenopt"};
  app.require_subcommand(1);
  RawArgs raw;

  auto add_policy = [&](CLI::App* sub) {
    sub->add_option("--eps", raw.eps, "gradient-norm tolerance (default 1e-3)");
    sub->add_option("--max-iter", raw.max_iter, "iteration cap (default 10000000)");
    sub->add_option("--blowup", raw.blowup, "iterate-norm divergence guard (default 1e8)");
  };

  auto* run = app.add_subcommand("run", "single optimizer run");
  run->add_option("--method", raw.method, "sd | newton | cg");
  run->add_option("--step", raw.step,
                  "fixed:<a> | variable:<a,...> | quadfit:<a1,a2,a3> | golden:<lo>:<hi>[:tol]");
  run->add_option("--kappa", raw.kappa, "valley scale (default 1)");
  run->add_option("--start", raw.start, "starting point x1,x2 (default 2,2)");
  run->add_option("--restart", raw.restart, "CG restart period");
  run->add_option("--seed", raw.seed, "redraw quadfit samples at random with this seed");
  run->add_option("--traj", raw.traj, "write the trajectory CSV here");
  add_policy(run);

  auto* bench = app.add_subcommand("bench", "full experiment matrix");
  bench->add_option("--out", raw.out, "results CSV path (default stdout)");
  add_policy(bench);

  auto* contour = app.add_subcommand("contour", "level-curve grid data");
  contour->add_option("--kappa", raw.kappa, "valley scale (default 1)");
  contour->add_option("--x-range", raw.x_range, "lo,hi (default -2,6)");
  contour->add_option("--y-range", raw.y_range, "lo,hi (default -2,6)");
  contour->add_option("--resolution", raw.resolution, "points per axis (default 401)");
  contour->add_option("--out", raw.out, "grid CSV path (default stdout)");

  auto* checkgrad = app.add_subcommand("checkgrad", "analytic vs finite-difference derivatives");
  checkgrad->add_option("--kappa", raw.kappa, "valley scale (default 1)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CliConfig config;
  if (run->parsed()) config.subcommand = Subcommand::Run;
  if (bench->parsed()) config.subcommand = Subcommand::Bench;
  if (contour->parsed()) config.subcommand = Subcommand::Contour;
  if (checkgrad->parsed()) config.subcommand = Subcommand::CheckGrad;

  if (raw.method == "sd") {
    config.method = Method::SteepestDescent;
  } else if (raw.method == "newton") {
    config.method = Method::Newton;
  } else if (raw.method == "cg") {
    config.method = Method::ConjugateGradient;
  } else {
    throw UsageError("--method: expected sd, newton or cg, got '" + raw.method + "'");
  }

  if (!raw.step.empty()) {
    try {
      config.step = parse_step_rule(raw.step);
    } catch (const InvalidInput& e) {
      throw UsageError(std::string("--step: ") + e.what());
    }
    if (std::holds_alternative<ExactQuadratic>(config.step)) {
      throw UsageError("--step: exact line search needs a quadratic objective");
    }
  }
  if (!raw.kappa.empty()) config.kappa = positive_flag("--kappa", raw.kappa);
  if (!raw.start.empty()) {
    const auto [x1, x2] = pair_flag("--start", raw.start);
    if (!std::isfinite(x1) || !std::isfinite(x2)) throw UsageError("--start must be finite");
    config.start = RealVector{x1, x2};
  }

  {
    double eps = config.policy.epsilon;
    std::int64_t max_iter = config.policy.max_iterations;
    double blowup = config.policy.blowup_norm;
    if (!raw.eps.empty()) eps = positive_flag("--eps", raw.eps);
    if (!raw.max_iter.empty()) {
      max_iter = int_flag<std::int64_t>("--max-iter", raw.max_iter);
      if (max_iter < 1) throw UsageError("--max-iter must be at least 1");
    }
    if (!raw.blowup.empty()) blowup = positive_flag("--blowup", raw.blowup);
    try {
      config.policy = TerminationPolicy(eps, max_iter, blowup);
    } catch (const InvalidInput& e) {
      throw UsageError(e.what());
    }
  }

  if (!raw.restart.empty()) {
    if (config.method != Method::ConjugateGradient) throw UsageError("--restart applies to cg only");
    config.restart = int_flag<std::int64_t>("--restart", raw.restart);
    if (*config.restart < 1) throw UsageError("--restart must be at least 1");
  }
  if (!raw.seed.empty()) {
    auto* fit = std::get_if<QuadraticFit>(&config.step);
    if (fit == nullptr || config.method == Method::Newton) {
      throw UsageError("--seed applies to the quadfit step rule only");
    }
    config.seed = int_flag<std::uint64_t>("--seed", raw.seed);
    const auto [lo, hi] = std::minmax_element(fit->sample_alphas.begin(), fit->sample_alphas.end());
    config.step = QuadraticFit(fit->sample_alphas, RandomSampling{*lo, *hi, *config.seed});
  }
  if (!raw.traj.empty()) config.traj_path = raw.traj;
  if (!raw.out.empty()) config.out_path = raw.out;

  if (!raw.x_range.empty()) {
    const auto [lo, hi] = pair_flag("--x-range", raw.x_range);
    config.x_range = {lo, hi};
  }
  if (!raw.y_range.empty()) {
    const auto [lo, hi] = pair_flag("--y-range", raw.y_range);
    config.y_range = {lo, hi};
  }
  if (!(config.x_range.hi > config.x_range.lo) || !(config.y_range.hi > config.y_range.lo)) {
    throw UsageError("--x-range/--y-range: need lo < hi");
  }
  if (!raw.resolution.empty()) {
    config.resolution = int_flag<int>("--resolution", raw.resolution);
    if (config.resolution < 2) throw UsageError("--resolution must be at least 2");
  }
  return config;
}

namespace {

void print_verdict(std::ostream& out, const RunResult& r) {
  out << status_label(r) << " iterations=" << r.iterations << " final_point=";
  for (Eigen::Index i = 0; i < r.final_point.size(); ++i) {
    if (i) out << ',';
    out << format_real(r.final_point[i]);
  }
  out << " final_f=" << format_real(r.final_value)
      << " final_grad_norm=" << format_real(r.final_grad_norm) << '\n';
}

int execute_run(const CliConfig& c, std::ostream& out) {
  MethodSpec spec{c.method, std::nullopt, c.restart};
  if (c.method != Method::Newton) spec.rule = c.step;
  const RunOptions options{.record_trajectory = c.traj_path.has_value()};
  const RunResult result = run_method(spec, c.kappa, c.start, c.policy, options);
  if (c.traj_path) {
    auto file = open_output(*c.traj_path);
    emit_trajectory_csv(file, result);
  }
  print_verdict(out, result);
  return kExitOk;
}

template <typename Emit>
void write_to(const std::optional<std::string>& path, std::ostream& out, Emit&& emit) {
  if (path) {
    auto file = open_output(*path);
    emit(file);
  } else {
    emit(out);
  }
}

}  // namespace

int execute(const CliConfig& c, std::ostream& out, std::ostream& err) {
  try {
    switch (c.subcommand) {
      case Subcommand::Run: return execute_run(c, out);
      case Subcommand::Bench: {
        auto matrix = ExperimentMatrix::defaults();
        matrix.policy = c.policy;
        const auto rows = run_matrix(matrix);
        write_to(c.out_path, out, [&](std::ostream& s) { emit_results_csv(s, rows); });
        return kExitOk;
      }
      case Subcommand::Contour: {
        const auto grid = contour_grid(c.kappa, c.x_range, c.y_range, c.resolution);
        write_to(c.out_path, out, [&](std::ostream& s) { emit_grid_csv(s, grid); });
        return kExitOk;
      }
      case Subcommand::CheckGrad: {
        const RosenbrockObjective objective(c.kappa);
        std::vector<Vector> probes;
        for (int i = -2; i <= 2; ++i) {
          for (int j = -2; j <= 2; ++j) probes.push_back(Vector{{double(i), double(j)}});
        }
        const auto report = check_derivatives(objective, probes);
        out << "gradient max_rel_error=" << format_real(report.gradient.max_relative)
            << " max_abs_error_near_zero=" << format_real(report.gradient.max_absolute_near_zero)
            << '\n'
            << "hessian max_rel_error=" << format_real(report.hessian.max_relative)
            << " max_abs_error_near_zero=" << format_real(report.hessian.max_absolute_near_zero)
            << '\n';
        return kExitOk;
      }
    }
  } catch (const std::exception& e) {
    err << "rosenopt: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "rosenopt: usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return execute(config, out, err);
}

}  // namespace rosenopt::cli

#include "rosenopt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

namespace rosenopt {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::SteepestDescent: return "sd";
    case Method::Newton: return "newton";
    case Method::ConjugateGradient: return "cg";
  }
  return "unknown";
}

std::string MethodSpec::method_label() const { return std::string(to_string(method)); }

std::string MethodSpec::rule_label() const {
  if (method == Method::Newton || !rule) return "none";
  std::string label = to_string(*rule);
  if (restart_period) label += "+restart:" + std::to_string(*restart_period);
  return label;
}

RunResult run_method(const MethodSpec& spec, double kappa, const RealVector& x0,
                     const TerminationPolicy& policy, const RunOptions& options) {
  const RosenbrockObjective objective(kappa);
  switch (spec.method) {
    case Method::Newton: return newton_raphson(objective, x0, policy, options);
    case Method::SteepestDescent:
      if (!spec.rule) throw InvalidInput("steepest descent needs a step rule");
      return steepest_descent(objective, x0, *spec.rule, policy, options);
    case Method::ConjugateGradient:
      if (!spec.rule) throw InvalidInput("conjugate gradient needs a step rule");
      return fletcher_reeves_cg(objective, x0, *spec.rule, policy, spec.restart_period, options);
  }
  throw InvalidInput("unknown method");
}

ExperimentMatrix ExperimentMatrix::defaults() {
  ExperimentMatrix m;
  for (double a : m.fixed_alphas) m.methods.push_back({Method::SteepestDescent, Fixed(a), {}});
  m.methods.push_back(
      {Method::SteepestDescent, VariableCandidates(kDefaultVariableCandidates), {}});
  m.methods.push_back({Method::SteepestDescent, QuadraticFit(kDefaultQuadFitSamples), {}});
  m.methods.push_back(
      {Method::SteepestDescent, GoldenSection(kDefaultGoldenLo, kDefaultGoldenHi, kDefaultGoldenTol),
       {}});
  m.methods.push_back({Method::Newton, std::nullopt, {}});
  for (double a : m.fixed_alphas) m.methods.push_back({Method::ConjugateGradient, Fixed(a), {}});
  return m;
}

std::vector<ResultRow> run_matrix(const ExperimentMatrix& matrix, unsigned threads) {
  struct Cell {
    const MethodSpec* spec;
    double kappa;
    const RealVector* start;
  };
  std::vector<Cell> cells;
  cells.reserve(matrix.cell_count());
  for (const auto& spec : matrix.methods) {
    for (double kappa : matrix.kappas) {
      for (const auto& start : matrix.starts) cells.push_back({&spec, kappa, &start});
    }
  }

  std::vector<std::optional<ResultRow>> slots(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    const RunOptions no_trajectory{.record_trajectory = false};
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const Cell& c = cells[i];
      const auto t0 = std::chrono::steady_clock::now();
      RunResult r = run_method(*c.spec, c.kappa, *c.start, matrix.policy, no_trajectory);
      const auto t1 = std::chrono::steady_clock::now();
      const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      slots[i].emplace(ResultRow{*c.spec, c.kappa, *c.start, std::move(r), ms});
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
  }

  std::vector<ResultRow> rows;
  rows.reserve(slots.size());
  for (auto& slot : slots) rows.push_back(std::move(*slot));
  return rows;
}

std::vector<std::string> compare_sd_variants(const std::vector<ResultRow>& rows, double kappa,
                                             const RealVector& start, double fixed_alpha) {
  auto variant_of = [&](const MethodSpec& spec) -> const char* {
    if (spec.method != Method::SteepestDescent || !spec.rule) return nullptr;
    if (const auto* f = std::get_if<Fixed>(&*spec.rule)) {
      return f->alpha == fixed_alpha ? kVariantFixed : nullptr;
    }
    if (std::holds_alternative<VariableCandidates>(*spec.rule)) return kVariantVariable;
    if (std::holds_alternative<QuadraticFit>(*spec.rule)) return kVariantQuadFit;
    if (std::holds_alternative<GoldenSection>(*spec.rule)) return kVariantGolden;
    return nullptr;
  };

  std::vector<std::pair<std::int64_t, std::string>> ranked;
  for (const char* wanted : {kVariantFixed, kVariantGolden, kVariantQuadFit, kVariantVariable}) {
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const ResultRow& r) {
      const char* v = variant_of(r.spec);
      return v != nullptr && std::string_view(v) == wanted && r.kappa == kappa &&
             r.start == start;
    });
    if (it == rows.end()) {
      throw Incomparable(std::string("no steepest-descent row for variant ") + wanted);
    }
    if (!it->result.converged()) {
      throw Incomparable(std::string("variant ") + wanted + " did not converge (" +
                         std::string(status_label(it->result)) + ")");
    }
    ranked.emplace_back(it->result.iterations, wanted);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<std::string> labels;
  for (auto& [iters, label] : ranked) labels.push_back(std::move(label));
  return labels;
}

double ContourGrid::x_at(int i) const {
  if (i == resolution - 1) return x_range.hi;
  return x_range.lo + (x_range.hi - x_range.lo) * i / (resolution - 1);
}

double ContourGrid::y_at(int j) const {
  if (j == resolution - 1) return y_range.hi;
  return y_range.lo + (y_range.hi - y_range.lo) * j / (resolution - 1);
}

ContourGrid contour_grid(double kappa, Interval x_range, Interval y_range, int resolution) {
  if (resolution < 2) throw InvalidInput("contour grid: resolution must be at least 2");
  auto valid = [](Interval r) {
    return std::isfinite(r.lo) && std::isfinite(r.hi) && r.hi > r.lo;
  };
  if (!valid(x_range) || !valid(y_range)) {
    throw InvalidInput("contour grid: ranges must be finite with hi > lo");
  }
  ContourGrid grid{x_range, y_range, resolution, kappa, Matrix(resolution, resolution)};
  Vector p(2);
  for (int i = 0; i < resolution; ++i) {
    p[0] = grid.x_at(i);
    for (int j = 0; j < resolution; ++j) {
      p[1] = grid.y_at(j);
      grid.values(i, j) = rosenbrock_value(p, kappa);
    }
  }
  return grid;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void check_stream(const std::ostream& out) {
  if (!out) throw IoError("failed writing CSV output");
}

}  // namespace

void emit_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "method,step_rule,kappa,x0_1,x0_2,status,iterations,final_f,final_grad_norm,wall_ms\n";
  for (const auto& row : rows) {
    // Rule labels may contain commas (variable, quadfit), so they are quoted.
    out << row.method_label() << ",\"" << row.rule_label() << "\"," << format_real(row.kappa)
        << ',' << format_real(row.start[0]) << ',' << format_real(row.start[1]) << ','
        << status_label(row.result) << ',' << row.result.iterations << ','
        << format_real(row.result.final_value) << ',' << format_real(row.result.final_grad_norm)
        << ',' << format_real(row.wall_ms) << '\n';
  }
  out.flush();
  check_stream(out);
}

void emit_trajectory_csv(std::ostream& out, const RunResult& result) {
  const Eigen::Index n = result.final_point.size();
  out << 'k';
  for (Eigen::Index i = 1; i <= n; ++i) out << ",x" << i;
  out << ",f,grad_norm,alpha\n";
  for (const auto& rec : result.trajectory) {
    out << rec.k;
    for (Eigen::Index i = 0; i < rec.point.size(); ++i) out << ',' << format_real(rec.point[i]);
    out << ',' << format_real(rec.value) << ',' << format_real(rec.grad_norm) << ','
        << format_real(rec.alpha_used) << '\n';
  }
  out.flush();
  check_stream(out);
}

void emit_grid_csv(std::ostream& out, const ContourGrid& grid) {
  out << "x,y,f\n";
  for (int i = 0; i < grid.resolution; ++i) {
    const std::string x = format_real(grid.x_at(i));
    for (int j = 0; j < grid.resolution; ++j) {
      out << x << ',' << format_real(grid.y_at(j)) << ',' << format_real(grid.values(i, j))
          << '\n';
    }
  }
  out.flush();
  check_stream(out);
}

}  // namespace rosenopt

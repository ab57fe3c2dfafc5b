#ifndef ROSENOPT_BENCH_HPP
#define ROSENOPT_BENCH_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rosenopt/optimize.hpp"

namespace rosenopt {

enum class Method { SteepestDescent, Newton, ConjugateGradient };

std::string_view to_string(Method method);  // sd | newton | cg

/// A method together with its step rule. Newton carries no rule.
struct MethodSpec {
  Method method;
  std::optional<StepRule> rule;
  std::optional<std::int64_t> restart_period;

  std::string method_label() const;
  std::string rule_label() const;  // "none" for Newton
};

/// Runs one method from one start on the Rosenbrock function with scale kappa.
RunResult run_method(const MethodSpec& spec, double kappa, const RealVector& x0,
                     const TerminationPolicy& policy, const RunOptions& options = {});

struct ExperimentMatrix {
  std::vector<double> kappas{1.0, 100.0};
  std::vector<RealVector> starts{RealVector{2.0, 2.0}, RealVector{5.0, 5.0}};
  std::vector<double> fixed_alphas{0.124, 0.0124, 0.00124, 0.000124};
  std::vector<MethodSpec> methods;
  TerminationPolicy policy{};

  /// Steepest descent with every fixed alpha, variable candidates, quadratic
  /// fit and golden section; Newton; Fletcher-Reeves with every fixed alpha.
  static ExperimentMatrix defaults();

  /// methods x kappas x starts, method-major.
  std::size_t cell_count() const { return methods.size() * kappas.size() * starts.size(); }
};

struct ResultRow {
  MethodSpec spec;
  double kappa;
  RealVector start;
  RunResult result;  // trajectory left empty
  double wall_ms;

  std::string method_label() const { return spec.method_label(); }
  std::string rule_label() const { return spec.rule_label(); }
};

/// Every cell, in matrix order (method, then kappa, then start). Cells run on
/// `threads` workers (0 = hardware concurrency); the output order does not
/// depend on it.
std::vector<ResultRow> run_matrix(const ExperimentMatrix& matrix, unsigned threads = 0);

/// Steepest-descent variant labels ordered by iteration count for one (kappa,
/// start), ties alphabetical. The fixed variant is the row with `fixed_alpha`.
/// Throws Incomparable if a variant is missing or did not converge.
std::vector<std::string> compare_sd_variants(const std::vector<ResultRow>& rows, double kappa,
                                             const RealVector& start,
                                             double fixed_alpha = 0.000124);

inline constexpr const char* kVariantFixed = "fixed";
inline constexpr const char* kVariantVariable = "variable";
inline constexpr const char* kVariantQuadFit = "quadratic-fit";
inline constexpr const char* kVariantGolden = "golden-section";

struct Interval {
  double lo;
  double hi;
};

/// f sampled on a uniform grid including both endpoints; values(i, j) is
/// f(x_i, y_j).
struct ContourGrid {
  Interval x_range;
  Interval y_range;
  int resolution;
  double kappa;
  Matrix values;

  double x_at(int i) const;
  double y_at(int j) const;
};

ContourGrid contour_grid(double kappa, Interval x_range, Interval y_range, int resolution);

// CSV writers. Reals use 17 significant digits. Write failures throw IoError.
void emit_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void emit_trajectory_csv(std::ostream& out, const RunResult& result);
void emit_grid_csv(std::ostream& out, const ContourGrid& grid);

std::string format_real(double v);

}  // namespace rosenopt

#endif  // ROSENOPT_BENCH_HPP

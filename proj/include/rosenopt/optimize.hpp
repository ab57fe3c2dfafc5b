#ifndef ROSENOPT_OPTIMIZE_HPP
#define ROSENOPT_OPTIMIZE_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rosenopt/linesearch.hpp"
#include "rosenopt/objective.hpp"

namespace rosenopt {

/// Stop when ||grad f|| <= epsilon; give up after max_iterations steps; call
/// the run diverged once ||x|| exceeds blowup_norm.
struct TerminationPolicy {
  TerminationPolicy(double epsilon = 1e-3, std::int64_t max_iterations = 10'000'000,
                    double blowup_norm = 1e8);

  double epsilon;
  std::int64_t max_iterations;
  double blowup_norm;
};

enum class DivergenceReason { IterateBlowup, NonFiniteValue, SingularHessian };

std::string_view to_string(DivergenceReason reason);

enum class RunStatus { Converged, Diverged, MaxIterationsExceeded };

struct IterateRecord {
  std::int64_t k;
  Vector point;
  double value;
  double grad_norm;
  /// Step size that produced this iterate; 0 at k = 0 and for Newton steps.
  double alpha_used;
  /// Search direction that produced this iterate (empty at k = 0). For Newton
  /// this is the full step -F^{-1} grad f.
  Vector direction;
};

struct RunResult {
  RunStatus status = RunStatus::MaxIterationsExceeded;
  /// Iteration count at convergence, or the index of the offending iterate
  /// for a divergence. Equals max_iterations when the cap is hit.
  std::int64_t iterations = 0;
  std::optional<DivergenceReason> divergence;
  /// Last iterate produced; may hold non-finite components after a
  /// non-finite divergence.
  Vector final_point;
  double final_value = 0.0;
  double final_grad_norm = 0.0;
  std::vector<IterateRecord> trajectory;

  bool converged() const { return status == RunStatus::Converged; }
};

/// Status label used in CSV output: converged, diverged_blowup,
/// diverged_nonfinite, diverged_singular_hessian or max_iter.
std::string_view status_label(const RunResult& result);

struct RunOptions {
  bool record_trajectory = true;
};

/// ||grad|| <= epsilon, inclusive.
bool check_convergence(const Vector& grad, double epsilon);

/// Non-finite x or value takes precedence over the norm test.
std::optional<DivergenceReason> detect_divergence(const Vector& x, double value,
                                                  const TerminationPolicy& policy);

/// Fletcher-Reeves coefficient g_new'g_new / g_old'g_old.
double fletcher_reeves_beta(const Vector& g_old, const Vector& g_new);

/// Conjugate-gradient recurrence state: current gradient, direction and the
/// last beta.
struct CGState {
  explicit CGState(Vector g0);

  /// Moves to the next gradient. With restart the direction resets to -g and
  /// beta is reported as 0.
  void advance(Vector g_next, bool restart);

  Vector g;
  Vector d;
  double beta = 0.0;
};

/// x(k+1) = x(k) - alpha(k) grad f(x(k)), with alpha(k) from the rule along
/// -grad f.
RunResult steepest_descent(const Objective& objective, const RealVector& x0, const StepRule& rule,
                           const TerminationPolicy& policy, const RunOptions& options = {});

/// Solves F(x(k)) s = grad f(x(k)) by LU with partial pivoting and steps
/// x(k+1) = x(k) - s. A Hessian with |det F| <= 1e-12 * max|F_ij|^n ends the
/// run as Diverged(singular-hessian).
RunResult newton_raphson(const Objective& objective, const RealVector& x0,
                         const TerminationPolicy& policy, const RunOptions& options = {});

/// Fletcher-Reeves nonlinear conjugate gradient. No descent check is made on
/// the direction. restart_period, when set, resets d to -g every that many
/// iterations.
RunResult fletcher_reeves_cg(const Objective& objective, const RealVector& x0,
                             const StepRule& rule, const TerminationPolicy& policy,
                             std::optional<std::int64_t> restart_period = std::nullopt,
                             const RunOptions& options = {});

}  // namespace rosenopt

#endif  // ROSENOPT_OPTIMIZE_HPP

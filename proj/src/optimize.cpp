#include "rosenopt/optimize.hpp"

#include <cmath>
#include <string>

namespace rosenopt {

TerminationPolicy::TerminationPolicy(double eps, std::int64_t max_iter, double blowup)
    : epsilon(eps), max_iterations(max_iter), blowup_norm(blowup) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidInput("termination: epsilon must be positive");
  }
  if (max_iterations < 1) throw InvalidInput("termination: max_iterations must be >= 1");
  if (!(blowup_norm > epsilon)) throw InvalidInput("termination: blowup_norm must exceed epsilon");
}

std::string_view to_string(DivergenceReason reason) {
  switch (reason) {
    case DivergenceReason::IterateBlowup: return "iterate-blowup";
    case DivergenceReason::NonFiniteValue: return "non-finite-value";
    case DivergenceReason::SingularHessian: return "singular-hessian";
  }
  return "unknown";
}

std::string_view status_label(const RunResult& result) {
  switch (result.status) {
    case RunStatus::Converged: return "converged";
    case RunStatus::MaxIterationsExceeded: return "max_iter";
    case RunStatus::Diverged:
      switch (result.divergence.value_or(DivergenceReason::NonFiniteValue)) {
        case DivergenceReason::IterateBlowup: return "diverged_blowup";
        case DivergenceReason::NonFiniteValue: return "diverged_nonfinite";
        case DivergenceReason::SingularHessian: return "diverged_singular_hessian";
      }
  }
  return "unknown";
}

bool check_convergence(const Vector& grad, double epsilon) { return grad.norm() <= epsilon; }

std::optional<DivergenceReason> detect_divergence(const Vector& x, double value,
                                                  const TerminationPolicy& policy) {
  if (!x.allFinite() || !std::isfinite(value)) return DivergenceReason::NonFiniteValue;
  if (x.norm() > policy.blowup_norm) return DivergenceReason::IterateBlowup;
  return std::nullopt;
}

double fletcher_reeves_beta(const Vector& g_old, const Vector& g_new) {
  return g_new.squaredNorm() / g_old.squaredNorm();
}

CGState::CGState(Vector g0) : g(std::move(g0)), d(-g) {}

void CGState::advance(Vector g_next, bool restart) {
  if (restart) {
    beta = 0.0;
    d = -g_next;
  } else {
    beta = fletcher_reeves_beta(g, g_next);
    d = -g_next + beta * d;
  }
  g = std::move(g_next);
}

namespace {

// Shared iterate bookkeeping for all three drivers.
class Run {
 public:
  Run(const Objective& objective, const RealVector& x0, const TerminationPolicy& policy,
      const RunOptions& options)
      : objective_(objective), policy_(policy), options_(options) {
    if (x0.dimension() != objective.dimension()) {
      throw InvalidInput("starting point has dimension " + std::to_string(x0.dimension()) +
                         ", objective expects " + std::to_string(objective.dimension()));
    }
    result_.final_point = x0.values();
  }

  // Evaluates the start. Returns false if the run already ended.
  bool start() {
    if (auto reason = detect_divergence(result_.final_point, 0.0, policy_)) {
      return diverge(*reason);
    }
    return evaluate(0.0, Vector());
  }

  // Accepts x(k+1). Returns false if the run ended because of it.
  bool accept(Vector x_next, double alpha, Vector direction) {
    ++k_;
    result_.final_point = std::move(x_next);
    if (auto reason = detect_divergence(result_.final_point, 0.0, policy_)) {
      return diverge(*reason);
    }
    return evaluate(alpha, std::move(direction));
  }

  // Termination test made before each step. Returns true if the run ended.
  bool done() {
    if (result_.final_grad_norm <= policy_.epsilon) {
      result_.status = RunStatus::Converged;
      result_.iterations = k_;
      return true;
    }
    if (k_ >= policy_.max_iterations) {
      result_.status = RunStatus::MaxIterationsExceeded;
      result_.iterations = k_;
      return true;
    }
    return false;
  }

  bool diverge(DivergenceReason reason) {
    result_.status = RunStatus::Diverged;
    result_.divergence = reason;
    result_.iterations = k_;
    return false;
  }

  const Vector& x() const { return result_.final_point; }
  const Vector& g() const { return gradient_; }
  RunResult finish() { return std::move(result_); }

 private:
  bool evaluate(double alpha, Vector direction) {
    const Vector& x = result_.final_point;
    result_.final_value = objective_.value(x);
    if (!std::isfinite(result_.final_value)) return diverge(DivergenceReason::NonFiniteValue);
    gradient_ = objective_.gradient(x);
    if (!gradient_.allFinite()) return diverge(DivergenceReason::NonFiniteValue);
    result_.final_grad_norm = gradient_.norm();
    if (options_.record_trajectory) {
      result_.trajectory.push_back(IterateRecord{k_, x, result_.final_value,
                                                 result_.final_grad_norm, alpha,
                                                 std::move(direction)});
    }
    return true;
  }

  const Objective& objective_;
  const TerminationPolicy& policy_;
  const RunOptions& options_;
  RunResult result_;
  Vector gradient_;
  std::int64_t k_ = 0;
};

// Line-search descent along directions produced by `next_direction`, which
// is told the new gradient after every accepted step.
template <typename Directions>
RunResult line_search_descent(const Objective& objective, const RealVector& x0,
                              const StepRule& rule, const TerminationPolicy& policy,
                              const RunOptions& options, Directions&& directions) {
  Run run(objective, x0, policy, options);
  if (!run.start()) return run.finish();
  StepSelector selector(rule);
  auto state = directions.init(run.g());
  while (!run.done()) {
    const Vector d = directions.current(state);
    double alpha = 0.0;
    try {
      alpha = selector.select(restrict(objective, run.x(), d));
    } catch (const LineSearchFailed&) {
      run.diverge(DivergenceReason::NonFiniteValue);
      break;
    } catch (const InvalidDirection&) {
      // Zero or non-finite direction from the recurrence.
      run.diverge(DivergenceReason::NonFiniteValue);
      break;
    }
    if (!run.accept(run.x() + alpha * d, alpha, d)) break;
    directions.advance(state, run.g());
  }
  return run.finish();
}

struct SteepestDirections {
  Vector init(const Vector& g) const { return -g; }
  const Vector& current(const Vector& d) const { return d; }
  void advance(Vector& d, const Vector& g) const { d = -g; }
};

struct FletcherReevesDirections {
  std::optional<std::int64_t> restart_period;
  std::int64_t steps = 0;

  CGState init(const Vector& g) const { return CGState(g); }
  const Vector& current(const CGState& s) const { return s.d; }
  void advance(CGState& s, const Vector& g) {
    ++steps;
    const bool restart = restart_period && steps % *restart_period == 0;
    s.advance(g, restart);
  }
};

}  // namespace

RunResult steepest_descent(const Objective& objective, const RealVector& x0, const StepRule& rule,
                           const TerminationPolicy& policy, const RunOptions& options) {
  return line_search_descent(objective, x0, rule, policy, options, SteepestDirections{});
}

RunResult fletcher_reeves_cg(const Objective& objective, const RealVector& x0,
                             const StepRule& rule, const TerminationPolicy& policy,
                             std::optional<std::int64_t> restart_period,
                             const RunOptions& options) {
  if (restart_period && *restart_period < 1) {
    throw InvalidInput("restart period must be a positive integer");
  }
  return line_search_descent(objective, x0, rule, policy, options,
                             FletcherReevesDirections{restart_period});
}

RunResult newton_raphson(const Objective& objective, const RealVector& x0,
                         const TerminationPolicy& policy, const RunOptions& options) {
  if (!objective.has_hessian()) throw InvalidInput("Newton-Raphson needs a Hessian");
  Run run(objective, x0, policy, options);
  if (!run.start()) return run.finish();
  while (!run.done()) {
    const Matrix hess = objective.hessian(run.x());
    if (!hess.allFinite()) {
      run.diverge(DivergenceReason::NonFiniteValue);
      break;
    }
    const Eigen::PartialPivLU<Matrix> lu(hess);
    const double scale = std::pow(hess.cwiseAbs().maxCoeff(), static_cast<double>(hess.rows()));
    if (!(std::abs(lu.determinant()) > 1e-12 * scale)) {
      run.diverge(DivergenceReason::SingularHessian);
      break;
    }
    Vector step = -lu.solve(run.g());
    Vector next = run.x() + step;
    if (!run.accept(std::move(next), 0.0, std::move(step))) break;
  }
  return run.finish();
}

}  // namespace rosenopt

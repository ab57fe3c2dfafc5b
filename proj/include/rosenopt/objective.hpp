#ifndef ROSENOPT_OBJECTIVE_HPP
#define ROSENOPT_OBJECTIVE_HPP

#include <vector>

#include "rosenopt/types.hpp"

namespace rosenopt {

/**
 * A twice-differentiable function R^n -> R.
 *
 * Implementations are immutable after construction, so a single instance can
 * be evaluated from several threads at once. Every evaluation rejects points
 * with non-finite components (InvalidInput) and points of the wrong
 * dimension.
 */
class Objective {
 public:
  virtual ~Objective() = default;

  virtual Eigen::Index dimension() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;

  /// Throws InvalidInput when has_hessian() is false.
  virtual Matrix hessian(const Vector& x) const;
  virtual bool has_hessian() const { return false; }

 protected:
  void check_point(const Vector& x) const;
};

// Closed forms of f(x1, x2) = kappa (x1^2 - x2)^2 + (x1 - 1)^2.
double rosenbrock_value(const Vector& p, double kappa);
Vector rosenbrock_gradient(const Vector& p, double kappa);
Matrix rosenbrock_hessian(const Vector& p, double kappa);

/// Two-dimensional Rosenbrock valley with scale kappa > 0. Minimum 0 at (1,1).
class RosenbrockObjective final : public Objective {
 public:
  explicit RosenbrockObjective(double kappa);

  double kappa() const { return kappa_; }

  Eigen::Index dimension() const override { return 2; }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  Matrix hessian(const Vector& x) const override;
  bool has_hessian() const override { return true; }

 private:
  double kappa_;
};

// f(x) = 1/2 x'Qx - x'b and its derivatives. Dimensions must agree.
double quadratic_value(const Vector& p, const Matrix& q, const Vector& b);
Vector quadratic_gradient(const Vector& p, const Matrix& q, const Vector& b);
Matrix quadratic_hessian(const Matrix& q);

/**
 * Strictly convex quadratic 1/2 x'Qx - x'b.
 *
 * Q must be exactly symmetric and positive definite; the constructor verifies
 * the latter with a Cholesky factorization and throws InvalidInput otherwise.
 */
class QuadraticObjective final : public Objective {
 public:
  QuadraticObjective(Matrix q, Vector b);

  const Matrix& q() const { return q_; }
  const Vector& b() const { return b_; }
  /// Q^{-1} b, the unique minimizer.
  Vector minimizer() const;

  Eigen::Index dimension() const override { return b_.size(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  Matrix hessian(const Vector& x) const override;
  bool has_hessian() const override { return true; }

 private:
  Matrix q_;
  Vector b_;
  Eigen::LLT<Matrix> llt_;
};

inline constexpr double kDefaultGradientStep = 1e-6;
inline constexpr double kDefaultHessianStep = 1e-4;

/// Central differences (f(p + h e_i) - f(p - h e_i)) / 2h per coordinate.
Vector finite_diff_gradient(const Objective& f, const Vector& p,
                            double h = kDefaultGradientStep);

/// Central second differences of f, symmetrized as (H + H') / 2.
Matrix finite_diff_hessian(const Objective& f, const Vector& p,
                           double h = kDefaultHessianStep);

struct DerivativeErrors {
  /// Largest |fd - analytic| / |analytic| over components with |analytic| >= near_zero.
  double max_relative = 0.0;
  /// Largest |fd - analytic| over the remaining near-zero components.
  double max_absolute_near_zero = 0.0;
};

struct DerivativeReport {
  DerivativeErrors gradient;
  DerivativeErrors hessian;
};

/// Compares analytic derivatives against the central-difference oracles at
/// each point, with the default steps.
DerivativeReport check_derivatives(const Objective& f, const std::vector<Vector>& points,
                                   double near_zero = 1e-3);

}  // namespace rosenopt

#endif  // ROSENOPT_OBJECTIVE_HPP

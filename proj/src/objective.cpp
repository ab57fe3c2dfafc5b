#include "rosenopt/objective.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rosenopt {

namespace {

void check_rosenbrock_args(const Vector& p, double kappa) {
  if (p.size() != 2) {
    throw InvalidInput("rosenbrock: point must be two-dimensional, got dimension " +
                       std::to_string(p.size()));
  }
  require_finite(p, "rosenbrock");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw InvalidInput("rosenbrock: kappa must be positive and finite");
  }
}

void check_quadratic_args(const Vector& p, const Matrix& q, const Vector& b) {
  if (q.rows() != q.cols() || q.rows() != b.size() || p.size() != b.size()) {
    throw InvalidInput("quadratic: dimension mismatch between point, Q and b");
  }
  require_finite(p, "quadratic");
}

}  // namespace

Matrix Objective::hessian(const Vector&) const {
  throw InvalidInput("objective does not provide a Hessian");
}

void Objective::check_point(const Vector& x) const {
  if (x.size() != dimension()) {
    throw InvalidInput("objective: expected dimension " + std::to_string(dimension()) +
                       ", got " + std::to_string(x.size()));
  }
  require_finite(x, "objective");
}

double rosenbrock_value(const Vector& p, double kappa) {
  check_rosenbrock_args(p, kappa);
  const double valley = p[0] * p[0] - p[1];
  const double offset = p[0] - 1.0;
  return kappa * valley * valley + offset * offset;
}

Vector rosenbrock_gradient(const Vector& p, double kappa) {
  check_rosenbrock_args(p, kappa);
  const double valley = p[0] * p[0] - p[1];
  Vector g(2);
  g[0] = 4.0 * kappa * p[0] * valley + 2.0 * (p[0] - 1.0);
  g[1] = -2.0 * kappa * valley;
  return g;
}

Matrix rosenbrock_hessian(const Vector& p, double kappa) {
  check_rosenbrock_args(p, kappa);
  const double off = -4.0 * kappa * p[0];
  Matrix h(2, 2);
  h << 12.0 * kappa * p[0] * p[0] - 4.0 * kappa * p[1] + 2.0, off,
      off, 2.0 * kappa;
  return h;
}

RosenbrockObjective::RosenbrockObjective(double kappa) : kappa_(kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw InvalidInput("RosenbrockObjective: kappa must be positive and finite");
  }
}

double RosenbrockObjective::value(const Vector& x) const { return rosenbrock_value(x, kappa_); }

Vector RosenbrockObjective::gradient(const Vector& x) const {
  return rosenbrock_gradient(x, kappa_);
}

Matrix RosenbrockObjective::hessian(const Vector& x) const {
  return rosenbrock_hessian(x, kappa_);
}

double quadratic_value(const Vector& p, const Matrix& q, const Vector& b) {
  check_quadratic_args(p, q, b);
  return 0.5 * p.dot(q * p) - p.dot(b);
}

Vector quadratic_gradient(const Vector& p, const Matrix& q, const Vector& b) {
  check_quadratic_args(p, q, b);
  return q * p - b;
}

Matrix quadratic_hessian(const Matrix& q) { return q; }

QuadraticObjective::QuadraticObjective(Matrix q, Vector b) : q_(std::move(q)), b_(std::move(b)) {
  if (q_.rows() != q_.cols() || q_.rows() != b_.size() || b_.size() < 1) {
    throw InvalidInput("QuadraticObjective: Q must be square and match b");
  }
  if (!q_.allFinite() || !b_.allFinite()) {
    throw InvalidInput("QuadraticObjective: non-finite entries");
  }
  if (q_ != q_.transpose()) {
    throw InvalidInput("QuadraticObjective: Q is not symmetric");
  }
  llt_.compute(q_);
  if (llt_.info() != Eigen::Success) {
    throw InvalidInput("QuadraticObjective: Q is not positive definite");
  }
}

Vector QuadraticObjective::minimizer() const { return llt_.solve(b_); }

double QuadraticObjective::value(const Vector& x) const { return quadratic_value(x, q_, b_); }

Vector QuadraticObjective::gradient(const Vector& x) const {
  return quadratic_gradient(x, q_, b_);
}

Matrix QuadraticObjective::hessian(const Vector& x) const {
  check_point(x);
  return quadratic_hessian(q_);
}

Vector finite_diff_gradient(const Objective& f, const Vector& p, double h) {
  if (!(h > 0.0)) throw InvalidInput("finite_diff_gradient: step must be positive");
  const Eigen::Index n = p.size();
  Vector g(n);
  Vector probe = p;
  for (Eigen::Index i = 0; i < n; ++i) {
    probe[i] = p[i] + h;
    const double up = f.value(probe);
    probe[i] = p[i] - h;
    const double down = f.value(probe);
    probe[i] = p[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

Matrix finite_diff_hessian(const Objective& f, const Vector& p, double h) {
  if (!(h > 0.0)) throw InvalidInput("finite_diff_hessian: step must be positive");
  const Eigen::Index n = p.size();
  const double center = f.value(p);
  Matrix hess(n, n);
  Vector probe = p;

  auto eval_shifted = [&](Eigen::Index i, double di, Eigen::Index j, double dj) {
    probe[i] += di;
    probe[j] += dj;
    const double v = f.value(probe);
    probe[i] = p[i];
    probe[j] = p[j];
    return v;
  };

  for (Eigen::Index i = 0; i < n; ++i) {
    const double up = eval_shifted(i, h, i, 0.0);
    const double down = eval_shifted(i, -h, i, 0.0);
    hess(i, i) = (up - 2.0 * center + down) / (h * h);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double pp = eval_shifted(i, h, j, h);
      const double pm = eval_shifted(i, h, j, -h);
      const double mp = eval_shifted(i, -h, j, h);
      const double mm = eval_shifted(i, -h, j, -h);
      hess(i, j) = (pp - pm - mp + mm) / (4.0 * h * h);
      hess(j, i) = hess(i, j);
    }
  }
  return 0.5 * (hess + hess.transpose());
}

namespace {

void accumulate(DerivativeErrors& errs, double fd, double exact, double near_zero) {
  const double diff = std::abs(fd - exact);
  if (std::abs(exact) >= near_zero) {
    errs.max_relative = std::max(errs.max_relative, diff / std::abs(exact));
  } else {
    errs.max_absolute_near_zero = std::max(errs.max_absolute_near_zero, diff);
  }
}

}  // namespace

DerivativeReport check_derivatives(const Objective& f, const std::vector<Vector>& points,
                                   double near_zero) {
  DerivativeReport report;
  for (const Vector& p : points) {
    const Vector g = f.gradient(p);
    const Vector g_fd = finite_diff_gradient(f, p);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      accumulate(report.gradient, g_fd[i], g[i], near_zero);
    }
    if (!f.has_hessian()) continue;
    const Matrix h = f.hessian(p);
    const Matrix h_fd = finite_diff_hessian(f, p);
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
      for (Eigen::Index j = 0; j < h.cols(); ++j) {
        accumulate(report.hessian, h_fd(i, j), h(i, j), near_zero);
      }
    }
  }
  return report;
}

}  // namespace rosenopt

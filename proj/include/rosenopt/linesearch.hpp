#ifndef ROSENOPT_LINESEARCH_HPP
#define ROSENOPT_LINESEARCH_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rosenopt/objective.hpp"

namespace rosenopt {

// Step-size rules. Each constructor validates its invariants and throws
// InvalidInput on violation.

struct Fixed {
  explicit Fixed(double alpha);
  double alpha;
};

struct VariableCandidates {
  explicit VariableCandidates(std::vector<double> alphas);
  std::vector<double> alphas;
};

/// Samples drawn uniformly from [lo, hi] each iteration instead of the fixed
/// triple.
struct RandomSampling {
  double lo;
  double hi;
  std::uint64_t seed;
};

struct QuadraticFit {
  explicit QuadraticFit(std::array<double, 3> sample_alphas,
                        std::optional<RandomSampling> random = std::nullopt);
  std::array<double, 3> sample_alphas;
  std::optional<RandomSampling> random;
};

struct GoldenSection {
  GoldenSection(double lo, double hi, double width_tol);
  double lo;
  double hi;
  double width_tol;
};

/// Exact minimization along the line; only valid for QuadraticObjective.
struct ExactQuadratic {};

using StepRule = std::variant<Fixed, VariableCandidates, QuadraticFit, GoldenSection, ExactQuadratic>;

// Defaults used by the benchmark.
inline const std::vector<double> kDefaultVariableCandidates{0.000124, 0.0124, 0.124};
inline constexpr std::array<double, 3> kDefaultQuadFitSamples{1e-5, 6.7e-5, 1.24e-4};
inline constexpr double kDefaultGoldenLo = 1.24e-6;
inline constexpr double kDefaultGoldenHi = 1.5;
inline constexpr double kDefaultGoldenTol = 1e-8;

/// The golden-ratio shrink factor (sqrt(5) - 1) / 2.
inline const double kGoldenRatio = (std::sqrt(5.0) - 1.0) / 2.0;

/// Textual form of a rule: fixed:<a> | variable:<a1,a2,...> |
/// quadfit:<a1,a2,a3> | golden:<lo>:<hi>:<tol> | exact.
std::string to_string(const StepRule& rule);

/// Parses the textual form. `quadfit` and `golden` without arguments yield the
/// benchmark defaults, as does `variable`. Throws InvalidInput on bad syntax or
/// values.
StepRule parse_step_rule(const std::string& text);

/**
 * The one-dimensional restriction phi(alpha) = f(x + alpha d).
 *
 * Holds a reference to the objective; the objective must outlive it. phi
 * returns NaN rather than throwing when x + alpha d has non-finite components.
 */
class LineRestriction {
 public:
  LineRestriction(const Objective& objective, Vector x, Vector d);

  double operator()(double alpha) const;
  /// Derivative phi'(alpha) = grad f(x + alpha d) . d
  double slope(double alpha) const;

  const Objective& objective() const { return *objective_; }
  const Vector& base() const { return x_; }
  const Vector& direction() const { return d_; }

 private:
  const Objective* objective_;
  Vector x_;
  Vector d_;
};

/// Throws InvalidDirection when d is zero and InvalidInput on dimension
/// mismatch.
LineRestriction restrict(const Objective& objective, const Vector& x, const Vector& d);

double select_fixed(const Fixed& rule);

/// argmin over the candidates; ties go to the smallest alpha. Candidates with a
/// non-finite phi are skipped; if none remain, throws LineSearchFailed.
double select_variable(const LineRestriction& line, const VariableCandidates& rule);

struct Parabola {
  double a;
  double b;
  double c;
};

/// Coefficients of the parabola a x^2 + b x + c through three points with
/// distinct abscissae.
Parabola fit_parabola(std::span<const double, 3> xs, std::span<const double, 3> ys);

/// The quadratic-fit step from pre-evaluated samples: the vertex -b/2a when the
/// fit is convex (a > 1e-18) and the vertex is positive, otherwise the positive
/// sample with the smallest value (ties to the smaller abscissa).
double quadratic_fit_step(std::span<const double, 3> alphas, std::span<const double, 3> values);

double select_quadratic_fit(const LineRestriction& line, const QuadraticFit& rule);

/// A golden-section bracket [lo, hi] with its two interior probes.
class GoldenBracket {
 public:
  template <typename Phi>
  GoldenBracket(const Phi& phi, double lo, double hi)
      : lo_(lo), hi_(hi) {
    left_ = hi_ - kGoldenRatio * (hi_ - lo_);
    right_ = lo_ + kGoldenRatio * (hi_ - lo_);
    f_left_ = checked(phi(left_));
    f_right_ = checked(phi(right_));
  }

  /// One shrink: keep [lo, right] if phi(left) <= phi(right), else [left, hi].
  template <typename Phi>
  void shrink(const Phi& phi) {
    if (f_left_ <= f_right_) {
      hi_ = right_;
      right_ = left_;
      f_right_ = f_left_;
      left_ = hi_ - kGoldenRatio * (hi_ - lo_);
      f_left_ = checked(phi(left_));
    } else {
      lo_ = left_;
      left_ = right_;
      f_left_ = f_right_;
      right_ = lo_ + kGoldenRatio * (hi_ - lo_);
      f_right_ = checked(phi(right_));
    }
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }
  double midpoint() const { return 0.5 * (lo_ + hi_); }

 private:
  static double checked(double v);

  double lo_;
  double hi_;
  double left_;
  double right_;
  double f_left_;
  double f_right_;
};

/// Shrinks the bracket until its width is at most width_tol and returns the
/// midpoint. Unimodality is not checked.
double select_golden_section(const LineRestriction& line, const GoldenSection& rule);

/// alpha = -(g'd) / (d'Qd) for a QuadraticObjective restriction. Throws
/// InvalidDirection if d'Qd <= 0 and InvalidInput for other objectives.
double select_exact_quadratic(const LineRestriction& line);

/**
 * Applies a StepRule along successive restrictions.
 *
 * Stateless except for the random quadratic-fit mode, where it owns the seeded
 * generator that redraws the three samples on every call.
 */
class StepSelector {
 public:
  explicit StepSelector(StepRule rule);

  double select(const LineRestriction& line);
  const StepRule& rule() const { return rule_; }

 private:
  StepRule rule_;
  std::mt19937_64 rng_;
};

}  // namespace rosenopt

#endif  // ROSENOPT_LINESEARCH_HPP

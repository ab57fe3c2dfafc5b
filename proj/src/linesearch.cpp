#include "rosenopt/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rosenopt {

namespace {

constexpr double kConvexityFloor = 1e-18;

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_real(part, what));
  return out;
}

// Best (smallest phi, then smallest alpha) among the positive alphas with a
// finite value. NaN if there is none.
double best_sample(std::span<const double> alphas, std::span<const double> values) {
  double best_alpha = std::numeric_limits<double>::quiet_NaN();
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0) || !std::isfinite(values[i])) continue;
    const bool better = std::isnan(best_alpha) || values[i] < best_value ||
                        (values[i] == best_value && alphas[i] < best_alpha);
    if (better) {
      best_alpha = alphas[i];
      best_value = values[i];
    }
  }
  return best_alpha;
}

}  // namespace

Fixed::Fixed(double a) : alpha(a) {
  if (!positive_finite(alpha)) throw InvalidInput("fixed step must be positive");
}

VariableCandidates::VariableCandidates(std::vector<double> a) : alphas(std::move(a)) {
  if (alphas.empty()) throw InvalidInput("variable step needs at least one candidate");
  for (double v : alphas) {
    if (!positive_finite(v)) throw InvalidInput("variable step candidates must be positive");
  }
}

QuadraticFit::QuadraticFit(std::array<double, 3> s, std::optional<RandomSampling> r)
    : sample_alphas(s), random(r) {
  for (double v : sample_alphas) {
    if (!positive_finite(v)) throw InvalidInput("quadratic-fit samples must be positive");
  }
  if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2]) {
    throw InvalidInput("quadratic-fit samples must be pairwise distinct");
  }
  if (random && !(positive_finite(random->lo) && std::isfinite(random->hi) &&
                  random->hi > random->lo)) {
    throw InvalidInput("quadratic-fit random range must satisfy 0 < lo < hi");
  }
}

GoldenSection::GoldenSection(double l, double h, double tol) : lo(l), hi(h), width_tol(tol) {
  if (!(lo >= 0.0) || !std::isfinite(hi) || !positive_finite(width_tol) ||
      !(hi - lo > width_tol)) {
    throw InvalidInput("golden section needs 0 <= lo, hi - lo > tol > 0");
  }
}

std::string to_string(const StepRule& rule) {
  struct Printer {
    std::string operator()(const Fixed& r) const { return "fixed:" + shortest_repr(r.alpha); }
    std::string operator()(const VariableCandidates& r) const {
      std::string s = "variable:";
      for (std::size_t i = 0; i < r.alphas.size(); ++i) {
        if (i) s += ',';
        s += shortest_repr(r.alphas[i]);
      }
      return s;
    }
    std::string operator()(const QuadraticFit& r) const {
      return "quadfit:" + shortest_repr(r.sample_alphas[0]) + ',' +
             shortest_repr(r.sample_alphas[1]) + ',' + shortest_repr(r.sample_alphas[2]);
    }
    std::string operator()(const GoldenSection& r) const {
      return "golden:" + shortest_repr(r.lo) + ':' + shortest_repr(r.hi) + ':' +
             shortest_repr(r.width_tol);
    }
    std::string operator()(const ExactQuadratic&) const { return "exact"; }
  };
  return std::visit(Printer{}, rule);
}

StepRule parse_step_rule(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const bool has_args = colon != std::string::npos;
  const std::string args = has_args ? text.substr(colon + 1) : std::string();

  if (kind == "fixed") {
    if (!has_args) throw InvalidInput("fixed step needs a value, e.g. fixed:0.0124");
    return Fixed(parse_real(args, "fixed step"));
  }
  if (kind == "variable") {
    if (!has_args) return VariableCandidates(kDefaultVariableCandidates);
    return VariableCandidates(parse_list(args, "variable step"));
  }
  if (kind == "quadfit") {
    if (!has_args) return QuadraticFit(kDefaultQuadFitSamples);
    const auto v = parse_list(args, "quadfit sample");
    if (v.size() != 3) throw InvalidInput("quadfit needs exactly three samples");
    return QuadraticFit({v[0], v[1], v[2]});
  }
  if (kind == "golden") {
    if (!has_args) return GoldenSection(kDefaultGoldenLo, kDefaultGoldenHi, kDefaultGoldenTol);
    const auto parts = split(args, ':');
    if (parts.size() != 2 && parts.size() != 3) {
      throw InvalidInput("golden step expects golden:<lo>:<hi>[:tol]");
    }
    const double tol = parts.size() == 3 ? parse_real(parts[2], "golden tol") : kDefaultGoldenTol;
    return GoldenSection(parse_real(parts[0], "golden lo"), parse_real(parts[1], "golden hi"), tol);
  }
  if (kind == "exact" && !has_args) return ExactQuadratic{};
  throw InvalidInput("unknown step rule '" + text + "'");
}

LineRestriction::LineRestriction(const Objective& objective, Vector x, Vector d)
    : objective_(&objective), x_(std::move(x)), d_(std::move(d)) {}

double LineRestriction::operator()(double alpha) const {
  Vector p = x_ + alpha * d_;
  if (!p.allFinite()) return std::numeric_limits<double>::quiet_NaN();
  return objective_->value(p);
}

double LineRestriction::slope(double alpha) const {
  Vector p = x_ + alpha * d_;
  if (!p.allFinite()) return std::numeric_limits<double>::quiet_NaN();
  return objective_->gradient(p).dot(d_);
}

LineRestriction restrict(const Objective& objective, const Vector& x, const Vector& d) {
  if (x.size() != objective.dimension() || d.size() != objective.dimension()) {
    throw InvalidInput("restrict: dimension mismatch");
  }
  require_finite(x, "restrict");
  if (!d.allFinite()) throw InvalidDirection("restrict: non-finite direction");
  if (d.squaredNorm() == 0.0) throw InvalidDirection("restrict: zero direction");
  return LineRestriction(objective, x, d);
}

double select_fixed(const Fixed& rule) { return rule.alpha; }

double select_variable(const LineRestriction& line, const VariableCandidates& rule) {
  std::vector<double> values;
  values.reserve(rule.alphas.size());
  for (double a : rule.alphas) values.push_back(line(a));
  const double best = best_sample(rule.alphas, values);
  if (std::isnan(best)) throw LineSearchFailed("variable step: every candidate is non-finite");
  return best;
}

Parabola fit_parabola(std::span<const double, 3> xs, std::span<const double, 3> ys) {
  if (xs[0] == xs[1] || xs[0] == xs[2] || xs[1] == xs[2]) {
    throw InvalidInput("fit_parabola: abscissae must be distinct");
  }
  // Newton divided differences solve the 3x3 Vandermonde system without
  // forming it.
  const double d01 = (ys[1] - ys[0]) / (xs[1] - xs[0]);
  const double d12 = (ys[2] - ys[1]) / (xs[2] - xs[1]);
  const double a = (d12 - d01) / (xs[2] - xs[0]);
  const double b = d01 - a * (xs[0] + xs[1]);
  const double c = ys[0] - d01 * xs[0] + a * xs[0] * xs[1];
  return {a, b, c};
}

double quadratic_fit_step(std::span<const double, 3> alphas, std::span<const double, 3> values) {
  const bool all_finite_values =
      std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
  if (all_finite_values) {
    const Parabola p = fit_parabola(alphas, values);
    if (p.a > kConvexityFloor) {
      // -b / 2a, written around the first two samples to avoid cancellation in b.
      const double d01 = (values[1] - values[0]) / (alphas[1] - alphas[0]);
      const double vertex = 0.5 * (alphas[0] + alphas[1]) - d01 / (2.0 * p.a);
      if (positive_finite(vertex)) return vertex;
    }
  }
  const double best = best_sample(alphas, values);
  if (std::isnan(best)) throw LineSearchFailed("quadratic fit: no usable sample");
  return best;
}

double select_quadratic_fit(const LineRestriction& line, const QuadraticFit& rule) {
  std::array<double, 3> values{};
  for (std::size_t i = 0; i < 3; ++i) values[i] = line(rule.sample_alphas[i]);
  return quadratic_fit_step(rule.sample_alphas, values);
}

double GoldenBracket::checked(double v) {
  if (!std::isfinite(v)) throw LineSearchFailed("golden section: non-finite objective value");
  return v;
}

double select_golden_section(const LineRestriction& line, const GoldenSection& rule) {
  GoldenBracket bracket(line, rule.lo, rule.hi);
  while (bracket.width() > rule.width_tol) {
    const double before = bracket.width();
    bracket.shrink(line);
    if (!(bracket.width() < before)) break;  // tolerance below round-off
  }
  return bracket.midpoint();
}

double select_exact_quadratic(const LineRestriction& line) {
  const auto* quad = dynamic_cast<const QuadraticObjective*>(&line.objective());
  if (quad == nullptr) throw InvalidInput("exact line search requires a quadratic objective");
  const Vector& d = line.direction();
  const double curvature = d.dot(quad->q() * d);
  if (!(curvature > 0.0)) throw InvalidDirection("exact line search: d'Qd must be positive");
  return -quad->gradient(line.base()).dot(d) / curvature;
}

StepSelector::StepSelector(StepRule rule) : rule_(std::move(rule)) {
  if (const auto* fit = std::get_if<QuadraticFit>(&rule_); fit && fit->random) {
    rng_.seed(fit->random->seed);
  }
}

double StepSelector::select(const LineRestriction& line) {
  struct Visitor {
    StepSelector& self;
    const LineRestriction& line;
    double operator()(const Fixed& r) const { return select_fixed(r); }
    double operator()(const VariableCandidates& r) const { return select_variable(line, r); }
    double operator()(const QuadraticFit& r) const {
      if (!r.random) return select_quadratic_fit(line, r);
      std::uniform_real_distribution<double> draw(r.random->lo, r.random->hi);
      std::array<double, 3> s{};
      do {
        for (double& v : s) v = draw(self.rng_);
      } while (s[0] == s[1] || s[0] == s[2] || s[1] == s[2]);
      return select_quadratic_fit(line, QuadraticFit(s));
    }
    double operator()(const GoldenSection& r) const { return select_golden_section(line, r); }
    double operator()(const ExactQuadratic&) const { return select_exact_quadratic(line); }
  };
  return std::visit(Visitor{*this, line}, rule_);
}

}  // namespace rosenopt

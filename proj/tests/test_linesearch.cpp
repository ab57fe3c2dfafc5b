#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "rosenopt/linesearch.hpp"

using namespace rosenopt;

namespace {

Vector vec(double a, double b) { return Vector{{a, b}}; }
Vector scalar(double a) { return Vector{{a}}; }

// 1-D quadratic x^2 - 2 c x, so phi(alpha) = (alpha - c)^2 - c^2 along x = 0,
// d = 1.
QuadraticObjective parabola_through(double c) {
  return QuadraticObjective(Matrix::Constant(1, 1, 2.0), scalar(2.0 * c));
}

// cosh(x - center): smooth, unimodal and not quadratic.
class CoshObjective final : public Objective {
 public:
  explicit CoshObjective(double center) : center_(center) {}
  Eigen::Index dimension() const override { return 1; }
  double value(const Vector& x) const override { return std::cosh(x[0] - center_); }
  Vector gradient(const Vector& x) const override { return scalar(std::sinh(x[0] - center_)); }

 private:
  double center_;
};

}  // namespace

TEST_CASE("restriction evaluates f along the line") {
  const RosenbrockObjective f(1.0);
  const auto line = restrict(f, vec(2, 2), vec(-18, 4));
  CHECK(line(0.0) == 5.0);
  CHECK(line(0.0124) == doctest::Approx(1.8298).epsilon(1e-4));
  CHECK(line(0.0124) == f.value(vec(1.7768, 2.0496)));

  const QuadraticObjective q(Matrix::Identity(2, 2), vec(1, 0));
  CHECK(restrict(q, vec(3, -1), vec(1, 1))(0.0) == q.value(vec(3, -1)));

  CHECK_THROWS_AS(restrict(f, vec(2, 2), vec(0, 0)), InvalidDirection);
  CHECK_THROWS_AS(restrict(f, vec(2, 2), scalar(1)), InvalidInput);
}

TEST_CASE("restriction returns NaN for non-finite points") {
  const RosenbrockObjective f(1.0);
  const auto line = restrict(f, vec(0, 0), vec(1e308, 0));
  CHECK(std::isnan(line(10.0)));
  CHECK(std::isinf(restrict(f, vec(0, 0), vec(1e300, 0))(1.0)));
}

TEST_CASE("step rule validation") {
  CHECK_THROWS_AS(Fixed(0.0), InvalidInput);
  CHECK_THROWS_AS(Fixed(-1.0), InvalidInput);
  CHECK_THROWS_AS(VariableCandidates({}), InvalidInput);
  CHECK_THROWS_AS(VariableCandidates({0.1, -0.2}), InvalidInput);
  CHECK_THROWS_AS(QuadraticFit({0.1, 0.1, 0.2}), InvalidInput);
  CHECK_THROWS_AS(QuadraticFit({0.0, 0.1, 0.2}), InvalidInput);
  CHECK_THROWS_AS(GoldenSection(1.0, 1.0, 1e-6), InvalidInput);
  CHECK_THROWS_AS(GoldenSection(0.0, 1e-7, 1e-6), InvalidInput);
  CHECK_THROWS_AS(GoldenSection(-1.0, 1.0, 1e-6), InvalidInput);
  CHECK_THROWS_AS(GoldenSection(0.0, 1.0, 0.0), InvalidInput);
}

TEST_CASE("fixed selection passes alpha through") {
  CHECK(select_fixed(Fixed(0.124)) == 0.124);
  CHECK(select_fixed(Fixed(0.000124)) == 0.000124);
  CHECK(select_fixed(Fixed(1.0)) == 1.0);
}

TEST_CASE("variable selection picks the best candidate") {
  const RosenbrockObjective f(1.0);
  const auto line = restrict(f, vec(2, 2), vec(-18, 4));
  CHECK(line(0.000124) == doctest::Approx(4.958).epsilon(1e-3));
  CHECK(line(0.124) == doctest::Approx(7.482).epsilon(1e-3));
  CHECK(select_variable(line, VariableCandidates({0.000124, 0.0124, 0.124})) == 0.0124);
  CHECK(select_variable(line, VariableCandidates({0.3})) == 0.3);

  const auto q = parabola_through(1.0);
  CHECK(select_variable(restrict(q, scalar(0), scalar(1)), VariableCandidates({0.5, 1.0, 2.0})) ==
        1.0);
}

TEST_CASE("variable selection breaks ties toward the smaller step") {
  const auto q = parabola_through(1.0);
  const auto line = restrict(q, scalar(0), scalar(1));
  // phi(0.5) == phi(1.5)
  CHECK(select_variable(line, VariableCandidates({1.5, 0.5})) == 0.5);
}

TEST_CASE("variable selection skips non-finite candidates and fails if none remain") {
  const RosenbrockObjective f(1.0);
  const auto line = restrict(f, vec(2, 2), vec(-18, 4));
  CHECK(select_variable(line, VariableCandidates({1e300, 0.0124})) == 0.0124);
  CHECK_THROWS_AS(select_variable(line, VariableCandidates({1e300})), LineSearchFailed);
}

TEST_CASE("parabola fit through three points") {
  const std::array<double, 3> xs{0, 1, 2};
  const std::array<double, 3> ys{1, -1, 1};
  const Parabola p = fit_parabola(xs, ys);
  CHECK(p.a == 2.0);
  CHECK(p.b == -4.0);
  CHECK(p.c == 1.0);
  CHECK(quadratic_fit_step(xs, ys) == 1.0);
  CHECK_THROWS_AS(fit_parabola(std::array<double, 3>{0, 0, 1}, ys), InvalidInput);
}

TEST_CASE("quadratic fit on a symmetric parabola returns its vertex") {
  const auto q = parabola_through(3.0);
  const auto line = restrict(q, scalar(0), scalar(1));
  CHECK(select_quadratic_fit(line, QuadraticFit({2, 3, 4})) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("quadratic fit falls back on concave samples") {
  const std::array<double, 3> xs{0, 1, 2};
  const std::array<double, 3> ys{0, 1, 0};
  CHECK(fit_parabola(xs, ys).a == -1.0);
  // 0 is not a usable step, so the best positive sample wins.
  CHECK(quadratic_fit_step(xs, ys) == 2.0);
}

TEST_CASE("quadratic fit falls back when the vertex is not positive") {
  // (alpha + 1)^2: convex, vertex at -1.
  const std::array<double, 3> xs{1, 2, 3};
  const std::array<double, 3> ys{4, 9, 16};
  CHECK(quadratic_fit_step(xs, ys) == 1.0);
}

TEST_CASE("quadratic fit with non-finite samples") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(quadratic_fit_step(std::array<double, 3>{1, 2, 3}, std::array<double, 3>{5, 4, inf}) ==
        2.0);
  CHECK_THROWS_AS(
      quadratic_fit_step(std::array<double, 3>{1, 2, 3}, std::array<double, 3>{inf, inf, inf}),
      LineSearchFailed);
}

TEST_CASE("property: quadratic fit is exact on convex parabolas") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> curv(0.1, 10.0);
  std::uniform_real_distribution<double> pos(0.1, 10.0);
  std::uniform_real_distribution<double> off(-5.0, 5.0);
  std::uniform_real_distribution<double> sample(0.01, 20.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = curv(rng);
    const double vertex = pos(rng);
    const double b = -2.0 * a * vertex;
    const double c = off(rng);
    std::array<double, 3> xs{};
    do {
      for (double& x : xs) x = sample(rng);
    } while (std::abs(xs[0] - xs[1]) < 0.1 || std::abs(xs[0] - xs[2]) < 0.1 ||
             std::abs(xs[1] - xs[2]) < 0.1);
    std::array<double, 3> ys{};
    for (int i = 0; i < 3; ++i) ys[i] = a * xs[i] * xs[i] + b * xs[i] + c;
    const double got = quadratic_fit_step(xs, ys);
    CHECK(std::abs(got - vertex) <= 1e-10 * vertex);
  }
}

TEST_CASE("golden section on a symmetric parabola") {
  const auto q = parabola_through(1.0);
  const auto line = restrict(q, scalar(0), scalar(1));
  CHECK(std::abs(select_golden_section(line, GoldenSection(0.0, 2.0, 1e-6)) - 1.0) <= 1e-6);
}

TEST_CASE("golden section on an increasing function collapses to the lower end") {
  // alpha^2 + 2 alpha is increasing on [0, 1].
  const auto q = parabola_through(-1.0);
  const auto line = restrict(q, scalar(0), scalar(1));
  CHECK(select_golden_section(line, GoldenSection(0.0, 1.0, 1e-6)) <= 1e-6);
}

TEST_CASE("golden bracket width shrinks by the golden ratio each step") {
  const auto q = parabola_through(0.7);
  const auto line = restrict(q, scalar(0), scalar(1));
  GoldenBracket bracket(line, 0.0, 2.0);
  for (int m = 1; m <= 12; ++m) {
    bracket.shrink(line);
    const double expected = 2.0 * std::pow(kGoldenRatio, m);
    CHECK(std::abs(bracket.width() - expected) <= 1e-12 * expected);
  }
}

TEST_CASE("golden section fails on non-finite values") {
  const RosenbrockObjective f(1.0);
  const auto line = restrict(f, vec(2, 2), vec(-18, 4));
  CHECK_THROWS_AS(select_golden_section(line, GoldenSection(0.0, 1e300, 1.0)), LineSearchFailed);
}

TEST_CASE("property: golden section agrees with a dense-grid argmin") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> center(0.05, 1.95);
  const double tol = 1e-4;
  for (int trial = 0; trial < 20; ++trial) {
    const CoshObjective f(center(rng));
    const auto line = restrict(f, scalar(0), scalar(1));
    const double got = select_golden_section(line, GoldenSection(0.0, 2.0, tol));

    const double step = tol / 10.0;
    double best = 0.0;
    double best_value = line(0.0);
    for (long i = 1; i * step <= 2.0; ++i) {
      const double a = i * step;
      const double v = line(a);
      if (v < best_value) {
        best_value = v;
        best = a;
      }
    }
    CHECK(std::abs(got - best) <= tol);
  }
}

TEST_CASE("exact quadratic line search") {
  const QuadraticObjective eye(Matrix::Identity(2, 2), vec(0, 0));
  CHECK(select_exact_quadratic(restrict(eye, vec(3, 0), vec(-3, 0))) == 1.0);

  Matrix d24 = Matrix::Zero(2, 2);
  d24.diagonal() << 2, 4;
  const QuadraticObjective q(d24, vec(0, 0));
  CHECK(select_exact_quadratic(restrict(q, vec(1, 0), vec(-2, 0))) == 0.5);

  CHECK_THROWS_AS(select_exact_quadratic(restrict(RosenbrockObjective(1.0), vec(2, 2), vec(1, 0))),
                  InvalidInput);
  // d'Qd underflows to zero.
  CHECK_THROWS_AS(select_exact_quadratic(restrict(q, vec(1, 0), vec(1e-200, 0))), InvalidDirection);
}

TEST_CASE("property: exact line search zeroes the directional derivative") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 5;
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = u(rng);
    Matrix q = a * a.transpose() + 0.5 * Matrix::Identity(n, n);
    q = (0.5 * (q + q.transpose())).eval();
    Vector b(n), x(n), d(n);
    for (int i = 0; i < n; ++i) {
      b[i] = u(rng);
      x[i] = u(rng);
      d[i] = u(rng);
    }
    const QuadraticObjective quad(q, b);
    const auto line = restrict(quad, x, d);
    const double alpha = select_exact_quadratic(line);
    CHECK(std::abs(quad.gradient(x + alpha * d).dot(d)) <= 1e-10);
  }
}

TEST_CASE("property: variable selection matches brute force on random lines") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_real_distribution<double> step(1e-5, 0.5);
  std::uniform_int_distribution<int> count(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const RosenbrockObjective f(trial % 2 ? 100.0 : 1.0);
    const Vector x = vec(coord(rng), coord(rng));
    const Vector d = -f.gradient(x);
    const auto line = restrict(f, x, d);
    std::vector<double> candidates(count(rng));
    for (double& c : candidates) c = step(rng);
    const double chosen = select_variable(line, VariableCandidates(candidates));
    for (double c : candidates) CHECK(line(chosen) <= line(c));
  }
}

TEST_CASE("step rule text round trip") {
  for (const std::string text :
       {"fixed:0.0124", "variable:0.000124,0.0124,0.124", "quadfit:1e-05,6.7e-05,0.000124",
        "golden:1.24e-06:1.5:1e-08", "exact"}) {
    CHECK(to_string(parse_step_rule(text)) == text);
  }
  CHECK(to_string(parse_step_rule("golden:0:2")) == "golden:0:2:1e-08");
  CHECK(to_string(parse_step_rule("quadfit")) == "quadfit:1e-05,6.7e-05,0.000124");
  CHECK(to_string(parse_step_rule("variable")) == "variable:0.000124,0.0124,0.124");
  for (const std::string bad : {"fixed", "fixed:", "fixed:-1", "fixed:abc", "fixed:1x",
                                "variable:0.1,", "quadfit:1,2", "golden:1", "newton", ""}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_step_rule(bad), InvalidInput);
  }
}

TEST_CASE("random quadratic-fit mode is seeded and stays in range") {
  const RosenbrockObjective f(1.0);
  const auto line = restrict(f, vec(2, 2), vec(-18, 4));
  const QuadraticFit rule({1e-5, 6.7e-5, 1.24e-4}, RandomSampling{1e-5, 1.24e-4, 123});
  StepSelector a(rule);
  StepSelector b(rule);
  for (int i = 0; i < 20; ++i) {
    const double sa = a.select(line);
    CHECK(sa == b.select(line));
    CHECK(sa > 0.0);
  }
}

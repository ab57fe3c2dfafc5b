#ifndef ROSENOPT_TYPES_HPP
#define ROSENOPT_TYPES_HPP

#include <initializer_list>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rosenopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Error hierarchy. Everything derives from std::runtime_error so callers can
// catch broadly at the process boundary.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidDirection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LineSearchFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Incomparable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool all_finite(const Vector& v);

/// Shortest decimal text that parses back to exactly `v`.
std::string shortest_repr(double v);

/// Parses a whole string as a double; throws InvalidInput naming `what`.
double parse_real(const std::string& text, const char* what);

// Throws InvalidInput naming `what` if any component is NaN or infinite.
void require_finite(const Vector& v, const char* what);

/// A point in R^n whose components are all finite. Dimension is fixed once
/// constructed; the value converts to a read-only Eigen vector.
class RealVector {
 public:
  explicit RealVector(Vector values);
  RealVector(std::initializer_list<double> values);

  Eigen::Index dimension() const { return values_.size(); }
  double operator[](Eigen::Index i) const { return values_[i]; }
  const Vector& values() const { return values_; }
  operator const Vector&() const { return values_; }

  friend bool operator==(const RealVector& a, const RealVector& b) {
    return a.values_ == b.values_;
  }

 private:
  Vector values_;
};

}  // namespace rosenopt

#endif  // ROSENOPT_TYPES_HPP

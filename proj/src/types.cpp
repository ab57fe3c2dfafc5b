#include "rosenopt/types.hpp"

#include <array>
#include <charconv>

namespace rosenopt {

bool all_finite(const Vector& v) { return v.allFinite(); }

std::string shortest_repr(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

double parse_real(const std::string& text, const char* what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw InvalidInput(std::string(what) + ": malformed number '" + text + "'");
  }
  return v;
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw InvalidInput(std::string(what) + ": non-finite component");
  }
}

RealVector::RealVector(Vector values) : values_(std::move(values)) {
  if (values_.size() < 1) {
    throw InvalidInput("RealVector: dimension must be at least 1");
  }
  require_finite(values_, "RealVector");
}

RealVector::RealVector(std::initializer_list<double> values)
    : RealVector(Vector::Map(values.begin(), static_cast<Eigen::Index>(values.size()))) {}

}  // namespace rosenopt

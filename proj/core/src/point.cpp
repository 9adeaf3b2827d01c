#include "lusin/point.hpp"

#include "lusin/errors.hpp"

#include <cmath>
#include <cstdio>

namespace lusin {

bool Point::is_finite() const noexcept {
  for (double c : coords) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

bool same_point(const Point& a, const Point& b) noexcept {
  if (a.coords.size() != b.coords.size()) return false;
  if (a.branch && b.branch && *a.branch != *b.branch) return false;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (std::abs(a.coords[i] - b.coords[i]) > kPointEqualityTolerance) return false;
  }
  return true;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("euclidean: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

std::string to_string(const Point& p) {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g", p.coords[i]);
    if (i) out += ", ";
    out += buf;
  }
  out += ")";
  if (p.branch) out += "#" + std::to_string(*p.branch);
  return out;
}

}  // namespace lusin

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace lusin {

/// Coordinate equality threshold used for the identity axiom.
inline constexpr double kPointEqualityTolerance = 1e-12;

/// A point of a concrete space: finite real coordinates plus an optional
/// branch tag for spaces that are disjoint unions of rays.
struct Point {
  std::vector<double> coords;
  std::optional<int> branch;

  Point() = default;
  Point(std::initializer_list<double> c) : coords(c) {}
  explicit Point(std::vector<double> c, std::optional<int> b = std::nullopt)
      : coords(std::move(c)), branch(b) {}

  std::size_t dimension() const noexcept { return coords.size(); }
  bool is_finite() const noexcept;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Coordinate-wise equality within kPointEqualityTolerance. Branch tags only
/// matter when both points carry one.
bool same_point(const Point& a, const Point& b) noexcept;

double euclidean(std::span<const double> a, std::span<const double> b);
inline double euclidean(const Point& a, const Point& b) { return euclidean(a.coords, b.coords); }

std::string to_string(const Point& p);

/// Uniform double in [0, 1) built from the top 53 bits of the engine output,
/// so sample streams are identical across standard library implementations.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace lusin

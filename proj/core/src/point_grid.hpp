#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lusin/point.hpp"

namespace lusin::detail {

// Uniform-cell spatial hash over points of one fixed dimension.
class PointGrid {
 public:
  explicit PointGrid(double cell) : cell_(cell) {}

  void insert(const Point& p, std::size_t id) {
    cells_[key(p.coords)].push_back({id, p.coords});
    ++size_;
  }

  std::size_t size() const noexcept { return size_; }

  // Calls f(id, distance) for every stored point within distance <= r of y.
  template <class F>
  void for_each_within(const Point& y, double r, F&& f) const {
    if (cells_.empty()) return;
    const auto reach = static_cast<std::int64_t>(std::ceil(r / cell_));
    const Key base = key(y.coords);
    Key probe = base;
    const std::size_t d = base.size();
    std::vector<std::int64_t> offset(d, -reach);
    for (;;) {
      for (std::size_t i = 0; i < d; ++i) probe[i] = base[i] + offset[i];
      if (auto it = cells_.find(probe); it != cells_.end()) {
        for (const auto& [id, coords] : it->second) {
          const double dist = euclidean(coords, y.coords);
          if (dist <= r) f(id, dist);
        }
      }
      std::size_t i = 0;
      while (i < d && offset[i] == reach) offset[i++] = -reach;
      if (i == d) break;
      ++offset[i];
    }
  }

  // Closest stored point within r (lowest id on ties).
  std::optional<std::pair<std::size_t, double>> nearest_within(const Point& y, double r) const {
    std::optional<std::pair<std::size_t, double>> best;
    for_each_within(y, r, [&](std::size_t id, double dist) {
      if (!best || dist < best->second || (dist == best->second && id < best->first)) best = {id, dist};
    });
    return best;
  }

  bool any_within(const Point& y, double r) const { return nearest_within(y, r).has_value(); }

 private:
  using Key = std::vector<std::int64_t>;

  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = 1469598103934665603ull;
      for (auto v : k) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

  Key key(const std::vector<double>& c) const {
    Key k(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) k[i] = static_cast<std::int64_t>(std::floor(c[i] / cell_));
    return k;
  }

  double cell_;
  std::size_t size_ = 0;
  std::unordered_map<Key, std::vector<std::pair<std::size_t, std::vector<double>>>, KeyHash> cells_;
};

}  // namespace lusin::detail

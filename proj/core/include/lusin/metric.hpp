#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lusin/errors.hpp"
#include "lusin/point.hpp"

namespace lusin {

using DistanceOracle = std::function<double(const Point&, const Point&)>;

/// A straight ray origin + s * direction, s >= 0, parametrised by arclength.
struct RayBranch {
  std::string name;
  std::vector<double> origin;
  std::vector<double> direction;  // unit length

  Point at(double s, std::optional<int> tag = std::nullopt) const;
};

struct RayLocation {
  int branch = 0;
  double parameter = 0.0;
};

/// A concrete metric space embedded in R^dimension.
///
/// Ray-parametrised spaces (`branches` nonempty) are finite unions of rays
/// whose parameters are 1-Lipschitz with respect to `distance`; this is what
/// makes interval regions [0, n] on the ray parameter analytically tractable.
struct SpaceDescriptor {
  std::string name;
  int dimension = 1;
  DistanceOracle distance;
  std::function<bool(const Point&)> membership;
  std::function<std::vector<Point>(std::size_t count, std::uint64_t seed)> sampler;
  std::vector<RayBranch> branches;
  // Branches are pairwise disjoint (a disjoint union), so points carry their
  // branch index as a tag. Rays sharing an origin leave points untagged.
  bool disjoint_branches = false;

  bool contains(const Point& p) const { return membership && membership(p); }

  /// Branch index and ray parameter of a member point; nullopt when the
  /// space has no branches or the point lies on none of them.
  std::optional<RayLocation> locate(const Point& p) const;

  /// Ray parameter of a member point; throws DomainError off the rays.
  double ray_parameter(const Point& p) const;

  Point on_branch(int branch, double s) const;
};

/// Distance between two members of `space`; throws DomainError otherwise.
double dist(const SpaceDescriptor& space, const Point& x, const Point& y);

struct AxiomViolation {
  std::vector<Point> points;
  std::string axiom;  // "nonnegativity", "identity", "symmetry", "triangle"
  double slack = 0.0;
};

struct AxiomReport {
  std::size_t pairs_checked = 0;
  std::size_t triples_checked = 0;
  std::size_t violation_count = 0;
  // The worst violations, at most kMaxRecordedViolations of them, sorted by
  // decreasing slack. max_slack is always the slack of the first entry.
  std::vector<AxiomViolation> violations;
  double max_slack = 0.0;

  static constexpr std::size_t kMaxRecordedViolations = 64;

  bool ok() const noexcept { return violation_count == 0; }
};

/// Raised when an oracle returns NaN or a negative value; carries the report
/// accumulated up to that point.
class OracleError : public Error {
 public:
  OracleError(const std::string& what, AxiomReport partial)
      : Error(what), partial_(std::move(partial)) {}
  const AxiomReport& partial() const noexcept { return partial_; }

 private:
  AxiomReport partial_;
};

/// Exhaustive check: nonnegativity, identity and symmetry on all pairs, the
/// triangle inequality on all ordered triples of `samples`.
AxiomReport check_metric_axioms(const DistanceOracle& distance, std::span<const Point> samples,
                                double tolerance);

/// Same axioms restricted to the given triples (every ordering of each).
AxiomReport check_metric_triples(const DistanceOracle& distance,
                                 std::span<const std::array<Point, 3>> triples, double tolerance);

/// Greedy farthest-point net: every sample ends up strictly within `epsilon`
/// of a returned point. Starts from samples[0]; ties go to the lowest index.
std::vector<Point> epsilon_net(const DistanceOracle& distance, std::span<const Point> samples,
                               double epsilon);
std::vector<Point> epsilon_net(const SpaceDescriptor& space, std::span<const Point> samples,
                               double epsilon);

enum class CauchyVerdict { cauchy, divergent, undetermined };

std::string_view to_string(CauchyVerdict v);

/// Classifies a finite sequence by its tail. With W = window: the final W
/// terms all pairwise closer than `tolerance` -> cauchy; the final W terms and
/// the W before them both of diameter >= tolerance -> divergent; otherwise
/// undetermined. Requires sequence.size() > 2 * window.
CauchyVerdict cauchy_classify(std::span<const Point> sequence, const DistanceOracle& distance,
                              std::size_t window, double tolerance);

}  // namespace lusin

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lusin/metric.hpp"

namespace lusin {

// Analytic curves s in [0, inf) -> R^m used as the image of one domain ray.

/// offset + s * velocity
struct AffineForm {
  std::vector<double> offset;
  std::vector<double> velocity;
};

/// Circle of `radius` about (cx, cy) at angle theta0 + sweep * s / (1 + s).
/// Injective for |sweep| <= 2 pi; the angle tends to theta0 + sweep.
struct RationalCircleForm {
  double cx = 0.0, cy = 0.0, radius = 1.0, theta0 = 0.0, sweep = 0.0;
};

/// Radius r_inf + amplitude * (1 + s)^(-power), angle theta0 + 2 pi * turns * s.
/// Winds onto the circle of radius r_inf.
struct SpiralForm {
  double cx = 0.0, cy = 0.0, r_inf = 1.0, amplitude = 1.0, power = 1.0, theta0 = 0.0, turns = 1.0;
};

/// Radius r_inf + amplitude * exp(-rate * s), angle theta0 + 2 pi * turns * s.
struct LogSpiralForm {
  double cx = 0.0, cy = 0.0, r_inf = 0.0, amplitude = 1.0, rate = 1.0, theta0 = 0.0, turns = 1.0;
};

/// scale * (sin u, sin u cos u) with u = sign * pi * s / (1 + s): one lobe of
/// a figure eight, closing up at the origin as s -> inf.
struct FigureEightForm {
  double scale = 1.0;
  int sign = 1;
};

using BranchForm = std::variant<AffineForm, RationalCircleForm, SpiralForm, LogSpiralForm, FigureEightForm>;

Point evaluate(const BranchForm& form, double s);
/// Parameter s >= 0 whose image is closest to y along the analytic inverse;
/// nullopt when the form has no preimage candidate for y.
std::optional<double> invert(const BranchForm& form, const Point& y);
std::size_t codomain_dimension(const BranchForm& form);
std::string_view form_name(const BranchForm& form);

/// Builds a form from its descriptor name and coefficient list:
///   affine            [offset..., velocity...]
///   rational_circle   [cx, cy, radius, theta0, sweep]
///   spiral            [cx, cy, r_inf, amplitude, power, theta0, turns]
///   log_spiral        [cx, cy, r_inf, amplitude, rate, theta0, turns]
///   figure_eight      [scale, sign]
BranchForm make_form(std::string_view name, std::span<const double> coefficients);

enum class SamplingLaw {
  linear,    // s uniform on [0, extent]
  rational,  // s / (1 + s) uniform on [0, extent / (1 + extent)]
};

struct BranchSampling {
  double extent = 10.0;
  SamplingLaw law = SamplingLaw::linear;
};

/// A continuous bijection f from a ray-parametrised domain onto its image,
/// given branch by branch: f(point at parameter s on ray b) = forms[b](s).
struct MapInstance {
  std::string name;
  SpaceDescriptor domain;
  std::size_t codomain_dimension = 2;
  std::vector<BranchForm> forms;
  std::vector<BranchSampling> sampling;
  // Analytic X_1 when it is a finite set (possibly empty).
  std::optional<std::vector<Point>> known_x1;
  // Lipschitz bound of every branch form in s; used as the continuity modulus.
  double lipschitz = 1.0;

  Point forward(const Point& x) const;
  /// Preimage of an image point; throws MapError when y is not in the image.
  Point inverse(const Point& y) const;
  Point at(int branch, double s) const;
};

/// Throws DescriptorError when forms/sampling do not match the domain.
void validate_map(const MapInstance& map);

/// Branch origins first, then `per_branch - 1` seeded draws per branch
/// following each branch's sampling law.
std::vector<Point> sample_domain(const MapInstance& map, std::size_t per_branch, std::uint64_t seed);

struct BijectionReport {
  std::size_t checked = 0;
  std::size_t failures = 0;
  double max_error = 0.0;
};

/// inverse(forward(x)) == x within `tolerance` on every sample.
BijectionReport check_bijection(const MapInstance& map, std::span<const Point> samples, double tolerance = 1e-9);

struct ContinuityReport {
  std::size_t steps = 0;
  std::size_t failures = 0;
  double max_ratio = 0.0;  // max |f(s+h) - f(s)| / (lipschitz * h)
};

/// Walks a uniform parameter grid of spacing `step` along each branch's
/// sampled extent and checks adjacent images against lipschitz * step.
ContinuityReport check_continuity(const MapInstance& map, double step);

/// Sequences x_{i,j} on a ray with parameters floor(start * factor^j) + i / count
/// for j = 0 .. steps - 1 and i = 0 .. count - 1. Each i is one escaping
/// sequence; j runs along it.
struct EscapeSampler {
  std::vector<int> branch_ids;
  double start = 1.0;
  double factor = 1.5;
  int steps = 64;
  int tail_steps = 16;
  int per_branch_count = 1000;

  double parameter(int step, int sequence) const;

  static EscapeSampler all_branches(const MapInstance& map);
};

struct EscapePoint {
  int branch = 0;
  int step = 0;
  int sequence = 0;
  double parameter = 0.0;
  Point image;
};

/// Images along the escape schedule; with tail_only, only the last tail_steps
/// steps of each sequence. Ordered by branch, then sequence, then step.
std::vector<EscapePoint> escape_points(const MapInstance& map, const EscapeSampler& sampler, bool tail_only);

namespace maps {

MapInstance identity();
MapInstance lollipop();
MapInstance figure_eight();
MapInstance spiral_lollipop();

std::optional<MapInstance> find(std::string_view name);
std::vector<std::string> names();

}  // namespace maps

}  // namespace lusin

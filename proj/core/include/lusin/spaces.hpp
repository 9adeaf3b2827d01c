#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lusin/metric.hpp"

namespace lusin::spaces {

/// Union of straight rays with the ambient Euclidean distance. The sampler
/// picks a branch uniformly and an exponentially distributed ray parameter
/// with the given mean.
SpaceDescriptor ray_space(std::string name, std::vector<RayBranch> branches, bool disjoint,
                          double sample_mean = 8.0);

/// [0, inf) in R.
SpaceDescriptor half_line();
/// R as the two rays t >= 0 and t <= 0 sharing the origin.
SpaceDescriptor line();
/// Two disjoint half-lines embedded at heights 0 and 2 in R^2.
SpaceDescriptor two_ray();
/// R^2; no ray branches.
SpaceDescriptor plane();
/// The half-line with the non-metric d(x, y) = (x - y)^2. Test fixture.
SpaceDescriptor squared_half_line();

std::optional<SpaceDescriptor> find(std::string_view name);
std::vector<std::string> names();

}  // namespace lusin::spaces

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lusin/compactification.hpp"
#include "lusin/lusin_map.hpp"
#include "lusin/metric.hpp"

namespace lusin {

/// What a CLI target resolves to: a space with its compactification, and a
/// map when branch forms are given.
struct Target {
  std::string name;
  SpaceDescriptor space;
  std::optional<CompactifiedSpace> cspace;
  std::optional<MapInstance> map;

  bool is_map() const noexcept { return map.has_value(); }
};

/// JSON descriptor:
///   {"name": "...", "space": "half-line" | "line" | "two-ray" | "plane" | "rays",
///    "rays": [{"origin": [..], "direction": [..]}], "disjoint": bool,   (space "rays" only)
///    "x0": [..],
///    "branches": [{"form": "rational_circle", "coefficients": [..],
///                  "extent": 10, "law": "linear" | "rational"}],
///    "known_x1": [[..], ..], "lipschitz": L,
///    "exhaustion": {"intervals": "[0,n]" | "[0,c*n]" | "ball(c*n)",
///                   "radii": "1/n" | "c/n" | "c" | "c^n", "n_max": N}}
/// Malformed JSON or unknown keys' values throw ConfigError; a descriptor
/// that parses but describes an invalid space, map or exhaustion throws
/// DescriptorError.
Target load_descriptor(std::string_view json_text);

/// Reads and parses a descriptor file; IoError when it cannot be read.
Target load_descriptor_file(const std::string& path);

/// Catalog space or map name, else a descriptor path. Unknown names that are
/// not existing files throw ConfigError.
Target resolve_target(const std::string& identifier);

std::vector<std::string> catalog_targets();

}  // namespace lusin

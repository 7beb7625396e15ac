#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hiervote/montecarlo.hpp"

namespace hiervote {

/// Heterogeneous system file:
///   {"groups":[{"size":3,"epsilon_mode":"eps"|"one_minus_eps"|<number>,"abstention":0.4}],
///    "note":"..."}
/// `size` is the effective (voting) group size. A group may give `base_size` instead, in
/// which case the size is round(base_size · (1 - abstention)).
struct HeteroConfig {
  HeteroFamily family;
  std::optional<std::string> note;

  friend bool operator==(const HeteroConfig&, const HeteroConfig&) = default;
};

/// Throws Error(InvalidConfig) on malformed input and the usual size errors on invalid groups.
HeteroConfig parse_hetero_config(std::string_view json_text);

std::string serialize_hetero_config(const HeteroConfig& config);

HeteroConfig load_hetero_config(const std::string& path);

}  // namespace hiervote

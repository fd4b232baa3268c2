// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "bandlim/witness.hpp"

namespace bandlim {

enum class OutputFormat { Text, Csv, JsonLines };

struct CliConfig {
  int M = 20;
  WitnessBudget budget;
  std::string cr_table;  // JSON constant table for the interpolation compiler
  OutputFormat format = OutputFormat::Text;

  /// Throws ValidationError unless M is in [1, 64] and budgets are positive.
  void check() const;
};

/// Environment variable naming a config file, consulted when no explicit
/// path is given.
inline constexpr const char* kConfigEnv = "BANDLIM_CONFIG";

/// Reads {"M": 20, "format": "text", "cr_table": "...",
///        "budget": {"max_window": .., "max_panels": .., "max_steps": ..}}.
/// Missing keys keep their defaults.
CliConfig load_config(const std::string& path);
/// `explicit_path` if set, else $BANDLIM_CONFIG if set, else defaults.
CliConfig resolve_config(const std::optional<std::string>& explicit_path);

OutputFormat parse_format(const std::string& s);

}  // namespace bandlim

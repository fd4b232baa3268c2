// SPDX-License-Identifier: Apache-2.0
#include "bandlim/config.hpp"

#include <cstdlib>
#include <fstream>

#include <json.hpp>

namespace bandlim {

void CliConfig::check() const {
  if (M < 1 || M > 64) fail(ErrorKind::ValidationError, "precision M must be in [1, 64]");
  if (budget.max_window <= 0 || budget.max_panels <= 0 || budget.max_steps <= 0)
    fail(ErrorKind::ValidationError, "budgets must be positive");
}

OutputFormat parse_format(const std::string& s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json-lines") return OutputFormat::JsonLines;
  fail(ErrorKind::ValidationError, "unknown output format '" + s + "'");
}

CliConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ValidationError, "cannot read config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ValidationError, "config '" + path + "': " + e.what());
  }
  CliConfig c;
  try {
    if (j.contains("M")) c.M = j["M"].get<int>();
    if (j.contains("format")) c.format = parse_format(j["format"].get<std::string>());
    if (j.contains("cr_table")) c.cr_table = j["cr_table"].get<std::string>();
    if (j.contains("budget")) {
      const auto& b = j["budget"];
      if (b.contains("max_window")) c.budget.max_window = b["max_window"].get<std::int64_t>();
      if (b.contains("max_panels")) c.budget.max_panels = b["max_panels"].get<std::int64_t>();
      if (b.contains("max_steps")) c.budget.max_steps = b["max_steps"].get<std::int64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ValidationError, "config '" + path + "': " + e.what());
  }
  c.check();
  return c;
}

CliConfig resolve_config(const std::optional<std::string>& explicit_path) {
  if (explicit_path) return load_config(*explicit_path);
  if (const char* env = std::getenv(kConfigEnv); env && *env) return load_config(env);
  return {};
}

}  // namespace bandlim

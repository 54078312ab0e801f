#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "biphoton/report_io.hpp"
#include "biphoton/scenario.hpp"

namespace biphoton {

/// One fully resolved run request: a scenario, an optional sweep over one
/// parameter, and the output selection.
struct RunConfig {
  ScenarioSpec spec;
  std::optional<SweepRequest> sweep;
  OutputOptions outputs;
};

/// Parse a JSON run configuration. The schema is strict: schema_version must
/// be 1, all seven physical parameters are required, and any unrecognized key
/// raises ConfigError naming the offending path. The optional overrides come
/// from the command line and are applied before consistency checks, so a
/// scenario override re-derives the photon arrangement when the config leaves
/// it implicit.
RunConfig parse_run_config(const std::string& json_text,
                           const std::string& source_name,
                           const std::optional<std::string>& scenario_override,
                           const std::optional<std::string>& sweep_override);

/// parse_run_config on the contents of a file. Errors: ConfigError.
RunConfig load_run_config(const std::filesystem::path& path,
                          const std::optional<std::string>& scenario_override,
                          const std::optional<std::string>& sweep_override);

/// Parse a sweep option of the form "name=v1,v2,...". Errors: ConfigError on
/// malformed text; the parameter name itself is validated by run_sweep.
SweepRequest parse_sweep_option(const std::string& text);

}  // namespace biphoton

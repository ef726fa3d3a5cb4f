#pragma once

// Flat key=value parameter ingestion. Keys match the SystemParams field names
// plus the frame overrides delta, Omega_M and G0:
//
//   kappa gamma_m omega_m delta_s E g0 F F_im omega_d n_m delta Omega_M G0
//
// Lines may carry '#' comments. An override set to "auto" falls back to the
// value derived from the squeezed frame.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "optomech/model.hpp"

namespace optomech {

[[nodiscard]] std::span<const std::string_view> parameter_names();

[[nodiscard]] bool is_parameter(std::string_view name);

/// Sets a numeric parameter. Throws Error{UnknownParameter}.
void set_parameter(Scenario& scenario, std::string_view name, double value);

/// Current effective value of a parameter (overrides report the derived
/// value when unset).
[[nodiscard]] double get_parameter(const Scenario& scenario, std::string_view name);

/// Parses one textual value ("auto" clears an override).
void apply_setting(Scenario& scenario, std::string_view key, std::string_view value);

/// "key=value" form used by --set.
void apply_assignment(Scenario& scenario, std::string_view assignment);

/// Reads a config file on top of base. Throws Error{InvalidArgument} for malformed lines.
[[nodiscard]] Scenario load_config(const std::filesystem::path& path, Scenario base);

[[nodiscard]] Scenario parse_config(std::string_view text, Scenario base);

/// Canonical key=value dump, readable by parse_config.
[[nodiscard]] std::string format_config(const Scenario& scenario);

}  // namespace optomech

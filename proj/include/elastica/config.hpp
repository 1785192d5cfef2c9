#pragma once

// Plain-text key=value form of SolverConfig. One entry per line, '#' starts a
// comment, blank lines are ignored. Doubles are written with 17 significant
// digits so a file read back reproduces the config bit for bit.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "elastica/solver.hpp"

namespace elastica {

/// Sets one field. Throws std::invalid_argument for an unknown key or a
/// malformed value.
void apply_setting(SolverConfig& cfg, std::string_view key, std::string_view value);

/// Reads entries on top of base. Error messages carry the line number.
SolverConfig read_config(std::istream& in, SolverConfig base);
SolverConfig read_config_file(const std::string& path, SolverConfig base);

void write_config(std::ostream& out, const SolverConfig& cfg);
std::string to_key_value(const SolverConfig& cfg);

/// Keys accepted by apply_setting, in write order.
const std::vector<std::string>& config_keys();

}  // namespace elastica

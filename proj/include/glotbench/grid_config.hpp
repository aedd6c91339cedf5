#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "glotbench/harness.hpp"

namespace glotbench {

/// Grid file parsing. Two syntaxes are accepted:
///
///   key = value list          # plain text, '#' starts a comment
///   f0 = 60:240:20            # start:stop:step, stop inclusive
///   snr = 10, 20, inf
///   lf_shapes = 0.6/0.67/0.05, 0.4/0.8/0.02
///
/// or a JSON object with the same keys holding arrays ("inf" allowed as a
/// string). Missing keys keep the desk grid's value. Any problem raises
/// Error(config).
GridSpec parse_grid_config(std::istream& in);
GridSpec parse_grid_text(const std::string& text);
GridSpec load_grid_config(const std::filesystem::path& path);

/// Plain-text form of a grid, readable by parse_grid_config.
std::string format_grid_config(const GridSpec& spec);

}  // namespace glotbench

#pragma once

#include <cstdint>
#include <string>

namespace normconc::io {

/// Runs one CLI/C-API command (bound, compare, allocate, verify, sharpness) on a JSON
/// request and returns the serialized report. Throws normconc::Error.
std::string run_command(const std::string& command, const std::string& request, std::uint64_t default_seed);

}  // namespace normconc::io

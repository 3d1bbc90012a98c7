// JSON interchange for path families and trajectory streams.
// A family is {"N":..,"T":..,"S":..,"X":[[..],..]} with X[t] the heights at
// position t; trajectory streams are NDJSON, one {"r","S","X"} object per line.
#pragma once

#include "hexshuffle/path_family.hpp"

#include <iosfwd>
#include <string>

namespace hexshuffle {

std::string family_to_json(const PathFamily& family);
// parses and validates; throws std::runtime_error with a reason on bad input
PathFamily family_from_json(const std::string& text);

void write_trajectory_line(std::ostream& os, int r, const PathFamily& state);

// stable 64-bit FNV-1a hash of a canonical config string; hex-encoded
std::string config_hash(const std::string& canonical);

}  // namespace hexshuffle

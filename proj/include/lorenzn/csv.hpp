#pragma once

#include <string>

#include "lorenzn/integrate.hpp"

namespace lorenzn {

/// Write a trajectory as CSV: `#`-prefixed metadata comment lines, a header
/// row (`t,x,y,z[,color]` for Cartesian, `t,radius,angle,z[,color]` for
/// polar), then one row per sample. Numbers are printed with 17 significant
/// digits so every double round-trips bit-exactly. `\n` line endings,
/// C-locale formatting.
void write_csv(const Trajectory& traj, const std::string& path);

/// Inverse of write_csv. Throws ConfigError with the row number on
/// malformed rows, header mismatch, or non-increasing timestamps.
Trajectory read_csv(const std::string& path);

/// 17-significant-digit decimal rendering of a double (round-trip safe).
std::string format_double(double v);

}  // namespace lorenzn

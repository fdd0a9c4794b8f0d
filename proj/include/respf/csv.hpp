#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "respf/sde.hpp"
#include "respf/types.hpp"

namespace respf {

/// Floating point at 17 significant digits (round-trips double exactly).
std::string format_g17(double x);

/// Trajectory CSV: header t,y1,...,ym; one row per sample; LF endings.
void write_trajectory_csv(std::ostream& out, const SubsystemTrajectory& traj);
SubsystemTrajectory read_trajectory_csv(std::istream& in);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace respf

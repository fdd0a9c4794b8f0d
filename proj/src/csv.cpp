#include "respf/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace respf {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const SubsystemTrajectory& traj) {
  out << "t";
  for (Index j = 0; j < traj.sub_dim(); ++j) out << ",y" << (j + 1);
  out << "\n";
  for (Index i = 0; i < traj.size(); ++i) {
    out << format_g17(static_cast<double>(i) * traj.dt);
    for (Index j = 0; j < traj.sub_dim(); ++j)
      out << ',' << format_g17(traj.samples(i, j));
    out << "\n";
  }
}

SubsystemTrajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("t", 0) != 0)
    throw DataError("trajectory CSV: missing header");
  Index m = 0;
  for (char ch : line)
    if (ch == ',') ++m;
  std::vector<double> times;
  std::vector<double> flat;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    times.push_back(std::stod(cell));
    for (Index j = 0; j < m; ++j) {
      if (!std::getline(ss, cell, ','))
        throw DataError("trajectory CSV: short row");
      flat.push_back(std::stod(cell));
    }
  }
  if (times.size() < 2) throw DataError("trajectory CSV: need at least 2 samples");
  SubsystemTrajectory traj;
  traj.dt = times[1] - times[0];
  traj.samples.resize(static_cast<Index>(times.size()), m);
  for (std::size_t i = 0; i < times.size(); ++i)
    for (Index j = 0; j < m; ++j)
      traj.samples(static_cast<Index>(i), j) =
          flat[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)];
  return traj;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace respf

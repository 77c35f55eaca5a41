#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cytovisc/paths.hpp"

namespace cytovisc {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

/// Header `t,x,y,z`; one row per frame, seconds and meters.
void write_trajectory_csv(std::ostream& out, Trajectory const& t);

/// Header `t,particle,x,y,z`; frame-major, particle-minor.
void write_particles_csv(std::ostream& out, std::vector<Trajectory> const& particles);

/// Reads a `t,x,y,z` file. dt is taken from the time column, which must be
/// uniformly spaced and start at zero. Throws ParseError on malformed input.
Trajectory read_trajectory_csv(std::istream& in);

/// Reads a `t,particle,x,y,z` file written by write_particles_csv().
std::vector<Trajectory> read_particles_csv(std::istream& in);

}  // namespace cytovisc

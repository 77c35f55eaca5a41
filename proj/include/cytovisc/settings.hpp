#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "cytovisc/config.hpp"
#include "cytovisc/harness.hpp"
#include "cytovisc/langevin.hpp"

namespace cytovisc {

/// Every key the configuration format understands.
std::vector<std::string_view> const& known_config_keys();

PhysicalParams physics_from_config(ConfigFile const& cfg);
AcquisitionConfig acquisition_from_config(ConfigFile const& cfg);
VarianceConvention convention_from_config(ConfigFile const& cfg);
SweepSpec sweep_from_config(ConfigFile const& cfg);

/// Physics, acquisition and the [simulation], [drive] and [geometry]
/// sections. Obstacles requested by volume fraction are placed from the
/// acquisition seed.
LangevinRun langevin_from_config(ConfigFile const& cfg);

/// "amplitude=1e-13,frequency=10,direction=1:0:0,phase=0"; omitted keys keep
/// their defaults.
DriveSpec parse_drive(std::string_view spec);

/// "unbounded" | "halfspace[:normal=0:0:1,offset=0]" |
/// "box:edge=1e-5[,radius=3e-7,fraction=0.3]"
Geometry parse_geometry(std::string_view spec, std::uint64_t seed);

}  // namespace cytovisc

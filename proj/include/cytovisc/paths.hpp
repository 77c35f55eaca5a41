#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cytovisc/physics.hpp"
#include "cytovisc/vec3.hpp"

namespace cytovisc {

/// How the diffusion coefficient maps onto coordinate variances.
///
/// total_3d: the full 3D squared step over tau has expectation 2*D*tau, so
///           each coordinate carries 2*D*tau/3. This is the convention of the
///           reference viscometry tables and the default.
/// per_coordinate: textbook Einstein scaling, 2*D*tau per coordinate
///           (6*D*tau in 3D).
enum class VarianceConvention { total_3d, per_coordinate };

std::string_view to_string(VarianceConvention c) noexcept;
/// Accepts "total3d" / "per-coordinate" (and the enum spellings).
VarianceConvention parse_convention(std::string_view text);

/// Variance growth rate of a single coordinate, in m^2/s.
double coordinate_variance_rate(double diffusion_m2s, VarianceConvention c) noexcept;

/// Laboratory acquisition settings.
struct AcquisitionConfig {
    double frames_per_second = 40.0;
    double observation_s = 240.0;
    std::size_t trials = 100;
    std::uint64_t master_seed = 0;

    static constexpr double kMaxObservation_s = 600.0;

    void validate() const;
    /// N = observation_s * frames_per_second; validate() guarantees it is an integer.
    std::size_t frame_count() const;
    double frame_interval_s() const noexcept { return 1.0 / frames_per_second; }
};

/// Time-stamped 3D path of one particle; positions[i] is recorded at i*dt_s.
struct Trajectory {
    double dt_s = 0.0;
    std::vector<Vec3> positions;

    std::size_t steps() const noexcept { return positions.empty() ? 0 : positions.size() - 1; }
    double duration_s() const noexcept { return dt_s * static_cast<double>(steps()); }
};

/// Projection of a Trajectory onto the x-z observation plane.
struct Trajectory2D {
    double dt_s = 0.0;
    std::vector<Vec2> positions;

    std::size_t steps() const noexcept { return positions.empty() ? 0 : positions.size() - 1; }
};

/// Free Brownian path starting at the origin with N = frame_count() steps.
/// Randomness depends only on (acq.master_seed, trial_index).
Trajectory generate_wiener(PhysicalParams const& p, AcquisitionConfig const& acq, std::uint64_t trial_index,
                           VarianceConvention convention = VarianceConvention::total_3d);

/// Keeps every factor-th position starting at index 0 and scales dt.
/// Trailing steps that do not fill a whole coarse step are dropped; see
/// discarded_steps().
Trajectory subsample(Trajectory const& t, std::size_t factor);
Trajectory2D subsample(Trajectory2D const& t, std::size_t factor);

/// Number of fine steps dropped by subsample() for a path with `steps` steps.
constexpr std::size_t discarded_steps(std::size_t steps, std::size_t factor) noexcept {
    return factor == 0 ? 0 : steps % factor;
}

/// Drops y, as a widefield microscope looking along y does.
Trajectory2D project_to_plane(Trajectory const& t);

}  // namespace cytovisc

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "cytovisc/paths.hpp"
#include "cytovisc/physics.hpp"
#include "cytovisc/vec3.hpp"

namespace cytovisc {

/// Sinusoidal external force F(t) = amplitude * sin(2 pi f t + phase) * direction.
struct DriveSpec {
    double amplitude_N = 0.0;
    double frequency_Hz = 10.0;
    Vec3 direction{1.0, 0.0, 0.0};
    double phase_rad = 0.0;

    void validate() const;
    double angular_frequency() const noexcept { return 2.0 * kPi * frequency_Hz; }
    Vec3 force(double t) const noexcept;
    /// Exact time integral of force() over [t0, t1].
    Vec3 impulse(double t0, double t1) const noexcept;
};

/// Static spherical obstacle (vesicle, organelle).
struct Obstacle {
    Vec3 center;
    double radius_m = 0.0;
};

struct Unbounded {};

/// Reflecting plane wall; the allowed side is dot(normal, x) >= offset_m.
struct HalfSpace {
    Vec3 normal{0.0, 0.0, 1.0};
    double offset_m = 0.0;
};

/// Cube [0, edge)^3 with periodic images and static reflecting obstacles.
/// Trajectories are recorded unwrapped; use wrap_into_box() for the image.
struct PeriodicBox {
    double edge_m = 0.0;
    std::vector<Obstacle> obstacles;
};

using Geometry = std::variant<Unbounded, HalfSpace, PeriodicBox>;

/// Throws InvalidArgument for non-unit normals, overlapping or oversized
/// obstacles, or obstacles outside the box.
void validate_geometry(Geometry const& g);

Vec3 wrap_into_box(Vec3 p, double edge_m) noexcept;

/// Random sequential placement of non-overlapping equal spheres until the
/// requested volume fraction is reached (rounded to a whole obstacle count).
std::vector<Obstacle> place_obstacles(double edge_m, double radius_m, double volume_fraction, std::uint64_t seed);

struct LangevinRun {
    PhysicalParams params;
    AcquisitionConfig acq;
    std::optional<DriveSpec> drive;
    Geometry geometry = Unbounded{};
    std::size_t particle_count = 1;
    bool thermal_noise = true;
    std::size_t substeps_per_frame = 100;
    VarianceConvention convention = VarianceConvention::total_3d;
    std::uint64_t trial_index = 0;
    /// Explicit start positions, one per particle. When empty: the origin for
    /// unbounded and half-space geometries, uniform obstacle-free positions for
    /// the periodic box.
    std::vector<Vec3> initial_positions;

    void validate() const;
};

/// Resolves the start positions of every particle and checks them against
/// the geometry. Throws InvalidArgument when a particle starts inside an
/// obstacle or behind the wall.
std::vector<Vec3> resolve_initial_positions(LangevinRun const& run);

/// Euler-Maruyama integration of the overdamped Langevin equation
///
///   dx = F(t)/gamma dt + sqrt(2 D_c dt) xi,   gamma = 6 pi a eta,
///
/// with D_c the per-coordinate diffusion constant of the active convention.
/// The drift is integrated exactly over each substep (it depends on time
/// only). Boundary contacts are resolved after every substep; recorded
/// positions are the frame-boundary states. Particle p draws its noise from
/// derive_seed(master_seed, trial_index, p).
std::vector<Trajectory> simulate_langevin(LangevinRun const& run);

/// Mirror image of pos across the plane dot(normal, x) = offset when pos lies
/// on the forbidden side, pos otherwise.
Vec3 reflect_plane(Vec3 pos, Vec3 normal, double offset_m) noexcept;

/// Specular reflection of a step that ends inside the obstacle, about the
/// tangent plane at the point where the step crosses the surface. Throws
/// InvalidState when pos_before is already inside.
Vec3 reflect_sphere(Vec3 pos_before, Vec3 pos_after, Obstacle const& obstacle);

}  // namespace cytovisc

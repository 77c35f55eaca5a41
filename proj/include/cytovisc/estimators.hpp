#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "cytovisc/langevin.hpp"
#include "cytovisc/paths.hpp"

namespace cytovisc {

enum class DimensionMode { full_3d, projected_2d_corrected };

/// Factor restoring the 3D diffusion coefficient from a planar MSD. The
/// historical 4/pi factor is biased and exists only to demonstrate that bias.
enum class ProjectionFactor { three_halves, historical_four_over_pi };

std::string_view to_string(DimensionMode m) noexcept;

struct MsdEstimate {
    double lag_s = 0.0;
    double msd_m2 = 0.0;
    std::size_t sample_count = 0;
    DimensionMode dimension_mode = DimensionMode::full_3d;
};

/// Mean squared displacement over all pairs (i, i + lag_frames). Throws
/// InvalidArgument unless 1 <= lag_frames < positions.size().
MsdEstimate msd_at_lag(Trajectory const& t, std::size_t lag_frames);
MsdEstimate msd_at_lag(Trajectory2D const& t, std::size_t lag_frames);

/// Diffusion coefficient from an MSD. With the default total_3d convention:
///   full_3d:                D = msd / (2 lag)
///   projected_2d_corrected: D = (3/2) msd / (2 lag)
/// The per_coordinate convention divides by the matching 6 lag / 4 lag.
double diffusion_from_msd(MsdEstimate const& e, VarianceConvention convention = VarianceConvention::total_3d,
                          ProjectionFactor projection = ProjectionFactor::three_halves);

/// Alternative estimator: weighted least-squares slope of MSD(lag) through
/// the origin over lags 1..max_lag (weights (n - lag) / lag^2). Not used in
/// reference reproductions.
double diffusion_multilag_fit(Trajectory const& t, std::size_t max_lag,
                              VarianceConvention convention = VarianceConvention::total_3d);

/// First-order relative standard deviation of a lag-1 MSD viscosity
/// estimate built from N squared planar steps: 1/sqrt(N).
double predicted_relative_std(std::size_t sample_count);

// --- driven particle -------------------------------------------------------

struct DrivenEstimate {
    double viscosity_mPas = 0.0;
    double amplitude_m = 0.0;
    double amplitude_stderr_m = 0.0;
    /// false when the fitted amplitude is below 3 standard errors.
    bool reliable = false;
};

/// Least-squares fit of the displacement along the drive direction to
/// c0 + c1 t + a cos(wt) + b sin(wt) at the known drive frequency. The
/// oscillation amplitude A = hypot(a, b) of the noiseless response
/// A (cos(phi) - cos(wt + phi)) gives eta = F0 / (6 pi r w A). The linear
/// term absorbs slow Brownian drift. Requires at least five drive periods.
DrivenEstimate estimate_viscosity_driven(Trajectory const& t, DriveSpec const& drive, double radius_m);

// --- window counting ------------------------------------------------------

enum class Axis { x, y, z };

/// Slab lower_m <= coordinate < upper_m along one axis of a periodic box,
/// inspected every sample_period_s.
struct CountingWindow {
    Axis axis = Axis::x;
    double lower_m = 0.0;
    double upper_m = 0.0;
    double sample_period_s = 0.1;

    double width() const noexcept { return upper_m - lower_m; }
    /// Requires 0 < lower < upper < box_edge.
    void validate(double box_edge_m) const;
};

/// Identities (sorted) of the particles inside the window at time t_s.
struct CountSnapshot {
    double t_s = 0.0;
    std::vector<std::size_t> inside;
};

/// Probability that a particle uniformly placed in a 1D window of width w is
/// inside it again after tau, by adaptive Gauss-Kronrod quadrature of the
/// Gaussian transition kernel (per-coordinate variance of the convention).
double stay_probability(double diffusion_m2s, double window_width_m, double tau_s,
                        VarianceConvention convention = VarianceConvention::total_3d);

/// Samples the window every sample_period_s from multi-particle box
/// trajectories (all sharing dt_s). Coordinates are wrapped into the box.
std::vector<CountSnapshot> count_in_window(std::vector<Trajectory> const& particles, CountingWindow const& window,
                                           double box_edge_m);

/// Pooled fraction of particles present at t that are still present at
/// t + tau, over consecutive snapshot pairs.
double observed_stay_fraction(std::vector<CountSnapshot> const& snapshots);

inline constexpr double kCountingMinDiffusion = 1e-15;
inline constexpr double kCountingMaxDiffusion = 1e-8;

/// Inverts observed_stay_fraction() through stay_probability() by bisection
/// (in log D, relative tolerance 1e-3) over [1e-15, 1e-8] m^2/s. Throws
/// NoRootError when the observed fraction lies outside the achievable range.
double estimate_diffusion_from_counts(std::vector<CountSnapshot> const& snapshots, CountingWindow const& window,
                                      VarianceConvention convention = VarianceConvention::total_3d);

}  // namespace cytovisc

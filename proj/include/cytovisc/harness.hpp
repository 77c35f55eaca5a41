#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "cytovisc/parallel.hpp"
#include "cytovisc/paths.hpp"
#include "cytovisc/physics.hpp"
#include "cytovisc/report.hpp"

namespace cytovisc {

/// Subsampling factors applied to the configured frame rate; 40 fps gives
/// 40/20/10 frames per second.
inline constexpr std::array<std::size_t, 3> kResolutionFactors{1, 2, 4};

/// Ensembles smaller than this are flagged as unreliable in the report.
inline constexpr std::size_t kMinReliableTrials = 10;

struct EnsembleOptions {
    VarianceConvention convention = VarianceConvention::total_3d;
    std::size_t threads = default_thread_count();
};

struct EnsembleResult {
    EstimateReport report;
    RunManifest manifest;
    /// viscosity_estimates[trial][k] for resolution factor kResolutionFactors[k].
    std::vector<std::array<double, 3>> viscosity_estimates;
    std::array<double, 3> rmse{};
    bool low_trial_count = false;
};

/// Monte Carlo ensemble of lag-1 planar MSD viscosity estimates: for each
/// trial a free path is generated, projected onto x-z, subsampled by 1/2/4 and
/// turned into eta via the 3/2 projection correction. Aggregation follows
/// trial order, so results do not depend on the thread count.
EnsembleResult run_ensemble(PhysicalParams const& p, AcquisitionConfig const& acq, EnsembleOptions const& options = {});

struct SweepSpec {
    std::vector<double> observation_s{240.0};
    std::vector<double> frames_per_second{40.0};
    std::vector<double> temperature_K{310.0};
    std::vector<double> particle_radius_m{2e-8};
    std::size_t trials = 100;
    std::uint64_t master_seed = 0;
    /// Viscosity and Boltzmann constant shared by every grid point.
    PhysicalParams base;
    std::size_t ceiling = 10000;

    std::size_t run_count() const noexcept;
    /// Throws InvalidArgument for empty axes or when run_count() exceeds the
    /// ceiling (the message names the ceiling required).
    void validate() const;
};

struct SweepRow {
    double observation_s = 0.0;
    double frames_per_second = 0.0;
    double temperature_K = 0.0;
    double particle_radius_m = 0.0;
    std::array<double, 3> rmse{};
    std::array<double, 3> predicted{};
};

/// One run_ensemble per grid point, in grid order (obs slowest, then fps, T,
/// radius). Every grid point uses the sweep's master seed (common random
/// numbers), so a one-point sweep equals run_ensemble with that seed.
std::vector<SweepRow> run_sweep(SweepSpec const& spec, EnsembleOptions const& options = {});

/// Header: obs_s,fps,temperature_K,radius_m,rmse_f1,rmse_f2,rmse_f4,predicted_f1,predicted_f2,predicted_f4
void write_sweep_csv(std::ostream& out, std::vector<SweepRow> const& rows);

RunManifest sweep_manifest(SweepSpec const& spec, EnsembleOptions const& options);

// --- reference table reproduction --------------------------------------------

/// Seed used by `box1` when none is given; fixed before any run was made.
inline constexpr std::uint64_t kCanonicalSeed = 12345;

struct ReferenceRow {
    double observation_s;
    std::array<double, 3> rmse_mPas;
};

/// Reference RMSE of the naive viscosity estimate for T = 310 K, a = 20 nm,
/// eta = 1 mPa s, M = 100, 40 fps and factors 1/2/4.
inline constexpr std::array<ReferenceRow, 5> kReferenceTable{{
    {1.0, {0.1306, 0.1611, 0.2739}},
    {10.0, {0.0491, 0.0738, 0.0883}},
    {60.0, {0.0184, 0.0265, 0.0380}},
    {240.0, {0.0093, 0.0137, 0.0205}},
    {600.0, {0.0078, 0.0081, 0.0128}},
}};

inline constexpr double kCellTolerance = 0.35;
inline constexpr double kCellTightTolerance = 0.25;
inline constexpr std::size_t kMinTightCells = 12;

struct ReferenceCell {
    double observation_s = 0.0;
    std::size_t factor = 1;
    std::size_t sample_count = 0;
    double measured = 0.0;
    double target = 0.0;
    double relative_error = 0.0;
    bool within_tolerance = false;
    bool within_tight_tolerance = false;
};

struct ReferenceVerdict {
    std::uint64_t seed = 0;
    PhysicalParams params;
    std::vector<ReferenceCell> cells;  // obs-major, factor-minor
    std::size_t tight_count = 0;
    bool all_within_tolerance = false;
    bool passed = false;

    nlohmann::json to_json() const;
    std::string table() const;
};

/// Runs the canonical configuration (M = 100, 40 fps, all five durations) and
/// compares each cell with kReferenceTable. `params` defaults to the canonical
/// physics; changing the viscosity scales the expected RMSE proportionally.
ReferenceVerdict reproduce_reference_table(std::uint64_t seed, EnsembleOptions const& options = {},
                                           PhysicalParams const& params = {});

}  // namespace cytovisc

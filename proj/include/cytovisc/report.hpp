#pragma once

#include <cstddef>
#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "cytovisc/paths.hpp"

namespace cytovisc {

inline constexpr char const* kVersion = "0.1.0";

/// One observation resolution (configured fps divided by a subsampling factor).
struct ResolutionEntry {
    double frames_per_second = 0.0;
    std::size_t factor = 1;
    std::size_t sample_count = 0;  // squared planar steps per trial
    double D_est_m2s = 0.0;        // ensemble mean
    double viscosity_est_mPas = 0.0;
};

/// Per-resolution ensemble statistics, index-aligned with per_resolution.
/// `stds` is the root-mean-square deviation from the true viscosity when it
/// is known (simulation ensembles) and the sample standard deviation
/// otherwise. `predicted_stds` is eta / sqrt(N) in the same units.
struct EnsembleStats {
    std::vector<double> means;
    std::vector<double> stds;
    std::vector<double> predicted_stds;
};

struct EstimateReport {
    nlohmann::json config;  // configuration snapshot, generator id, manifest hash
    VarianceConvention convention = VarianceConvention::total_3d;
    std::vector<ResolutionEntry> per_resolution;  // decreasing frame rate
    EnsembleStats ensemble;
    std::uint64_t master_seed = 0;
    std::vector<std::uint64_t> trial_seeds;
};

/// Serialises with exactly the top-level keys
/// {config, convention, per_resolution, ensemble, seeds}.
nlohmann::json to_json(EstimateReport const& report);

/// Everything needed to re-execute a run within one build. The hash covers
/// all fields except the creation timestamp.
struct RunManifest {
    std::string version = kVersion;
    nlohmann::json config;
    VarianceConvention convention = VarianceConvention::total_3d;
    std::string generator;
    std::uint64_t master_seed = 0;
    std::vector<std::uint64_t> seeds;
    std::string created_utc;

    nlohmann::json to_json(bool with_timestamp = true) const;
    /// 16 hex digits of FNV-1a over the canonical JSON dump.
    std::string hash() const;
};

std::string current_utc_timestamp();

/// Pretty-printed JSON with a trailing newline; stable for identical input.
std::string render_json(nlohmann::json const& j);

}  // namespace cytovisc

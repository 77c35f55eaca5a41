#include "cytovisc/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

namespace cytovisc {

nlohmann::json to_json(EstimateReport const& report) {
    nlohmann::json per_resolution = nlohmann::json::array();
    for (auto const& e : report.per_resolution) {
        per_resolution.push_back({{"fps", e.frames_per_second}, {"D_est", e.D_est_m2s}, {"visc_est", e.viscosity_est_mPas}});
    }
    return {
        {"config", report.config},
        {"convention", std::string(to_string(report.convention))},
        {"per_resolution", per_resolution},
        {"ensemble",
         {{"means", report.ensemble.means},
          {"stds", report.ensemble.stds},
          {"predicted_stds", report.ensemble.predicted_stds}}},
        {"seeds", {{"master", report.master_seed}, {"per_trial", report.trial_seeds}}},
    };
}

nlohmann::json RunManifest::to_json(bool with_timestamp) const {
    nlohmann::json j = {
        {"version", version},
        {"config", config},
        {"convention", std::string(cytovisc::to_string(convention))},
        {"generator", generator},
        {"master_seed", master_seed},
        {"seeds", seeds},
    };
    if (with_timestamp) j["created_utc"] = created_utc;
    return j;
}

std::string RunManifest::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_json(false).dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string current_utc_timestamp() {
    auto const now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

std::string render_json(nlohmann::json const& j) { return j.dump(2) + "\n"; }

}  // namespace cytovisc

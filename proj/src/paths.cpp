#include "cytovisc/paths.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cytovisc/errors.hpp"
#include "cytovisc/rng.hpp"

namespace cytovisc {

std::string_view to_string(VarianceConvention c) noexcept {
    switch (c) {
        case VarianceConvention::total_3d:
            return "total3d";
        case VarianceConvention::per_coordinate:
            return "per-coordinate";
    }
    return "unknown";
}

VarianceConvention parse_convention(std::string_view text) {
    if (text == "total3d" || text == "total_3d") return VarianceConvention::total_3d;
    if (text == "per-coordinate" || text == "per_coordinate") return VarianceConvention::per_coordinate;
    throw InvalidArgument("unknown variance convention '" + std::string(text) +
                          "' (expected total3d or per-coordinate)");
}

double coordinate_variance_rate(double diffusion_m2s, VarianceConvention c) noexcept {
    return c == VarianceConvention::total_3d ? 2.0 * diffusion_m2s / 3.0 : 2.0 * diffusion_m2s;
}

void AcquisitionConfig::validate() const {
    if (!(frames_per_second > 0.0)) throw InvalidArgument("frames_per_second must be positive");
    if (!(observation_s > 0.0)) throw InvalidArgument("observation_s must be positive");
    if (observation_s > kMaxObservation_s) {
        throw InvalidArgument("observation_s exceeds the 600 s ceiling");
    }
    if (trials < 1) throw InvalidArgument("trials must be at least 1");
    double const n = observation_s * frames_per_second;
    double const rounded = std::round(n);
    if (rounded < 1.0 || std::abs(n - rounded) > 1e-9 * std::max(1.0, n)) {
        throw InvalidArgument("observation_s * frames_per_second must be a positive integer, got " +
                              std::to_string(n));
    }
}

std::size_t AcquisitionConfig::frame_count() const {
    validate();
    return static_cast<std::size_t>(std::llround(observation_s * frames_per_second));
}

Trajectory generate_wiener(PhysicalParams const& p, AcquisitionConfig const& acq, std::uint64_t trial_index,
                           VarianceConvention convention) {
    std::size_t const n = acq.frame_count();
    double const dt = acq.frame_interval_s();
    double const sigma = std::sqrt(coordinate_variance_rate(einstein_diffusion(p), convention) * dt);

    RandomStream rng(derive_seed(acq.master_seed, trial_index));
    Trajectory out;
    out.dt_s = dt;
    out.positions.reserve(n + 1);
    out.positions.push_back({});
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 step;
        step.x = sigma * rng.normal();
        step.y = sigma * rng.normal();
        step.z = sigma * rng.normal();
        out.positions.push_back(out.positions.back() + step);
    }
    return out;
}

namespace {

template <class Path>
Path subsample_impl(Path const& t, std::size_t factor) {
    if (factor == 0) throw InvalidArgument("subsampling factor must be at least 1");
    Path out;
    out.dt_s = t.dt_s * static_cast<double>(factor);
    std::size_t const coarse_steps = t.steps() / factor;
    if (t.positions.empty()) return out;
    out.positions.reserve(coarse_steps + 1);
    for (std::size_t k = 0; k <= coarse_steps; ++k) out.positions.push_back(t.positions[k * factor]);
    return out;
}

}  // namespace

Trajectory subsample(Trajectory const& t, std::size_t factor) { return subsample_impl(t, factor); }
Trajectory2D subsample(Trajectory2D const& t, std::size_t factor) { return subsample_impl(t, factor); }

Trajectory2D project_to_plane(Trajectory const& t) {
    Trajectory2D out;
    out.dt_s = t.dt_s;
    out.positions.reserve(t.positions.size());
    for (auto const& p : t.positions) out.positions.push_back({p.x, p.z});
    return out;
}

}  // namespace cytovisc

#include "cytovisc/harness.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "cytovisc/csv.hpp"
#include "cytovisc/errors.hpp"
#include "cytovisc/estimators.hpp"
#include "cytovisc/rng.hpp"

namespace cytovisc {
namespace {

nlohmann::json physics_json(PhysicalParams const& p) {
    return {{"temperature_K", p.temperature_K},
            {"particle_radius_m", p.particle_radius_m},
            {"viscosity_mPas", p.viscosity_mPas},
            {"boltzmann_J_per_K", p.boltzmann_J_per_K}};
}

nlohmann::json acquisition_json(AcquisitionConfig const& a) {
    return {{"frames_per_second", a.frames_per_second},
            {"observation_s", a.observation_s},
            {"trials", a.trials},
            {"frame_count", a.frame_count()}};
}

std::array<double, 3> trial_estimates(PhysicalParams const& p, AcquisitionConfig const& acq, std::uint64_t trial,
                                      VarianceConvention convention, std::array<double, 3>& diffusion) {
    Trajectory2D const plane = project_to_plane(generate_wiener(p, acq, trial, convention));
    std::array<double, 3> eta{};
    for (std::size_t k = 0; k < kResolutionFactors.size(); ++k) {
        auto const coarse = subsample(plane, kResolutionFactors[k]);
        double const d = diffusion_from_msd(msd_at_lag(coarse, 1), convention);
        diffusion[k] = d;
        eta[k] = viscosity_from_diffusion(d, p.temperature_K, p.particle_radius_m, p.boltzmann_J_per_K);
    }
    return eta;
}

}  // namespace

EnsembleResult run_ensemble(PhysicalParams const& p, AcquisitionConfig const& acq, EnsembleOptions const& options) {
    p.validate();
    acq.validate();
    std::size_t const m = acq.trials;
    std::size_t const n = acq.frame_count();

    EnsembleResult result;
    result.viscosity_estimates.resize(m);
    std::vector<std::array<double, 3>> diffusion(m);
    parallel_for(
        m,
        [&](std::size_t j) {
            result.viscosity_estimates[j] = trial_estimates(p, acq, j, options.convention, diffusion[j]);
        },
        options.threads);

    auto& report = result.report;
    report.convention = options.convention;
    report.master_seed = acq.master_seed;
    report.trial_seeds.reserve(m);
    for (std::size_t j = 0; j < m; ++j) report.trial_seeds.push_back(derive_seed(acq.master_seed, j));

    for (std::size_t k = 0; k < kResolutionFactors.size(); ++k) {
        double sum_eta = 0.0;
        double sum_d = 0.0;
        double sum_sq = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            double const e = result.viscosity_estimates[j][k];
            sum_eta += e;
            sum_d += diffusion[j][k];
            sum_sq += (e - p.viscosity_mPas) * (e - p.viscosity_mPas);
        }
        auto const md = static_cast<double>(m);
        std::size_t const factor = kResolutionFactors[k];
        std::size_t const samples = n / factor;
        result.rmse[k] = std::sqrt(sum_sq / md);
        report.per_resolution.push_back(
            {acq.frames_per_second / static_cast<double>(factor), factor, samples, sum_d / md, sum_eta / md});
        report.ensemble.means.push_back(sum_eta / md);
        report.ensemble.stds.push_back(result.rmse[k]);
        report.ensemble.predicted_stds.push_back(p.viscosity_mPas * predicted_relative_std(samples));
    }

    result.low_trial_count = m < kMinReliableTrials;
    nlohmann::json warnings = nlohmann::json::array();
    if (result.low_trial_count) {
        warnings.push_back("only " + std::to_string(m) + " trial(s); ensemble spread is unreliable below " +
                           std::to_string(kMinReliableTrials));
    }
    if (discarded_steps(n, kResolutionFactors.back()) != 0) {
        warnings.push_back(std::to_string(discarded_steps(n, kResolutionFactors.back())) +
                           " trailing frame(s) dropped at the coarsest resolution");
    }

    nlohmann::json config = {
        {"physics", physics_json(p)},
        {"acquisition", acquisition_json(acq)},
        {"resolution_factors", kResolutionFactors},
        {"estimator", "lag-1 planar MSD, 3/2 projection correction"},
        {"generator", std::string(generator_description())},
        {"version", kVersion},
    };
    result.manifest.config = config;
    result.manifest.convention = options.convention;
    result.manifest.generator = std::string(generator_description());
    result.manifest.master_seed = acq.master_seed;
    result.manifest.seeds = report.trial_seeds;
    result.manifest.created_utc = current_utc_timestamp();

    config["warnings"] = warnings;
    config["manifest_hash"] = result.manifest.hash();
    report.config = std::move(config);
    return result;
}

std::size_t SweepSpec::run_count() const noexcept {
    return observation_s.size() * frames_per_second.size() * temperature_K.size() * particle_radius_m.size();
}

void SweepSpec::validate() const {
    if (observation_s.empty() || frames_per_second.empty() || temperature_K.empty() || particle_radius_m.empty()) {
        throw InvalidArgument("every sweep axis needs at least one value");
    }
    if (trials < 1) throw InvalidArgument("sweep trials must be at least 1");
    if (run_count() > ceiling) {
        throw InvalidArgument("sweep needs " + std::to_string(run_count()) + " ensembles but the ceiling is " +
                              std::to_string(ceiling) + "; raise the ceiling to at least " +
                              std::to_string(run_count()));
    }
}

std::vector<SweepRow> run_sweep(SweepSpec const& spec, EnsembleOptions const& options) {
    spec.validate();
    std::vector<SweepRow> rows;
    rows.reserve(spec.run_count());
    for (double obs : spec.observation_s) {
        for (double fps : spec.frames_per_second) {
            for (double temp : spec.temperature_K) {
                for (double radius : spec.particle_radius_m) {
                    PhysicalParams p = spec.base;
                    p.temperature_K = temp;
                    p.particle_radius_m = radius;
                    AcquisitionConfig acq{fps, obs, spec.trials, spec.master_seed};
                    auto const res = run_ensemble(p, acq, options);
                    SweepRow row{obs, fps, temp, radius, res.rmse, {}};
                    for (std::size_t k = 0; k < 3; ++k) row.predicted[k] = res.report.ensemble.predicted_stds[k];
                    rows.push_back(row);
                }
            }
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, std::vector<SweepRow> const& rows) {
    out << "obs_s,fps,temperature_K,radius_m,rmse_f1,rmse_f2,rmse_f4,predicted_f1,predicted_f2,predicted_f4\n";
    for (auto const& r : rows) {
        out << format_double(r.observation_s) << ',' << format_double(r.frames_per_second) << ','
            << format_double(r.temperature_K) << ',' << format_double(r.particle_radius_m);
        for (double v : r.rmse) out << ',' << format_double(v);
        for (double v : r.predicted) out << ',' << format_double(v);
        out << '\n';
    }
}

RunManifest sweep_manifest(SweepSpec const& spec, EnsembleOptions const& options) {
    RunManifest m;
    m.config = {{"observation_s", spec.observation_s},
                {"frames_per_second", spec.frames_per_second},
                {"temperature_K", spec.temperature_K},
                {"particle_radius_m", spec.particle_radius_m},
                {"trials", spec.trials},
                {"ceiling", spec.ceiling},
                {"physics", physics_json(spec.base)},
                {"resolution_factors", kResolutionFactors}};
    m.convention = options.convention;
    m.generator = std::string(generator_description());
    m.master_seed = spec.master_seed;
    m.created_utc = current_utc_timestamp();
    return m;
}

ReferenceVerdict reproduce_reference_table(std::uint64_t seed, EnsembleOptions const& options,
                                           PhysicalParams const& params) {
    ReferenceVerdict verdict;
    verdict.seed = seed;
    verdict.params = params;
    for (auto const& row : kReferenceTable) {
        AcquisitionConfig acq{40.0, row.observation_s, 100, seed};
        auto const res = run_ensemble(params, acq, options);
        for (std::size_t k = 0; k < 3; ++k) {
            ReferenceCell cell;
            cell.observation_s = row.observation_s;
            cell.factor = kResolutionFactors[k];
            cell.sample_count = res.report.per_resolution[k].sample_count;
            cell.measured = res.rmse[k];
            cell.target = row.rmse_mPas[k] * params.viscosity_mPas;
            cell.relative_error = (cell.measured - cell.target) / cell.target;
            cell.within_tolerance = std::abs(cell.relative_error) <= kCellTolerance;
            cell.within_tight_tolerance = std::abs(cell.relative_error) <= kCellTightTolerance;
            verdict.tight_count += cell.within_tight_tolerance ? 1 : 0;
            verdict.cells.push_back(cell);
        }
    }
    verdict.all_within_tolerance = true;
    for (auto const& c : verdict.cells) verdict.all_within_tolerance = verdict.all_within_tolerance && c.within_tolerance;
    verdict.passed = verdict.all_within_tolerance && verdict.tight_count >= kMinTightCells;
    return verdict;
}

nlohmann::json ReferenceVerdict::to_json() const {
    nlohmann::json targets = nlohmann::json::array();
    for (auto const& row : kReferenceTable) targets.push_back({{"obs_s", row.observation_s}, {"rmse", row.rmse_mPas}});
    nlohmann::json cell_list = nlohmann::json::array();
    for (auto const& c : cells) {
        cell_list.push_back({{"obs_s", c.observation_s},
                             {"factor", c.factor},
                             {"fps", 40.0 / static_cast<double>(c.factor)},
                             {"sample_count", c.sample_count},
                             {"measured_rmse", c.measured},
                             {"target_rmse", c.target},
                             {"relative_error", c.relative_error},
                             {"within_35pct", c.within_tolerance},
                             {"within_25pct", c.within_tight_tolerance}});
    }
    return {{"seed", seed},
            {"physics", physics_json(params)},
            {"trials", 100},
            {"frames_per_second", 40.0},
            {"generator", std::string(generator_description())},
            {"reference_table", targets},
            {"cells", cell_list},
            {"tolerance", kCellTolerance},
            {"tight_tolerance", kCellTightTolerance},
            {"cells_within_tight", tight_count},
            {"required_within_tight", kMinTightCells},
            {"all_within_tolerance", all_within_tolerance},
            {"passed", passed}};
}

std::string ReferenceVerdict::table() const {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%8s %6s %7s %12s %12s %9s  %s\n", "obs[s]", "fps", "N", "measured", "target",
                  "rel.err", "verdict");
    out << line;
    for (auto const& c : cells) {
        char const* mark = c.within_tight_tolerance ? "ok" : (c.within_tolerance ? "ok (>25%)" : "FAIL");
        std::snprintf(line, sizeof line, "%8.0f %6.0f %7zu %12.5f %12.5f %+8.1f%%  %s\n", c.observation_s,
                      40.0 / static_cast<double>(c.factor), c.sample_count, c.measured, c.target,
                      100.0 * c.relative_error, mark);
        out << line;
    }
    out << "cells within 25%: " << tight_count << "/" << cells.size() << " (need " << kMinTightCells
        << "), all within 35%: " << (all_within_tolerance ? "yes" : "no") << "\n";
    out << "verdict: " << (passed ? "PASS" : "FAIL") << "\n";
    return out.str();
}

}  // namespace cytovisc

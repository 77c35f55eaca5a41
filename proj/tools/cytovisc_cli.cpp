// cytovisc command-line interface: simulate, estimate, ensemble, sweep, box1.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cytovisc/config.hpp"
#include "cytovisc/csv.hpp"
#include "cytovisc/errors.hpp"
#include "cytovisc/estimators.hpp"
#include "cytovisc/harness.hpp"
#include "cytovisc/langevin.hpp"
#include "cytovisc/output.hpp"
#include "cytovisc/rng.hpp"
#include "cytovisc/settings.hpp"

using namespace cytovisc;

namespace {

struct CommonFlags {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out = "-";
    bool force = false;
    std::optional<std::string> convention;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "Configuration file (TOML-style sections)")->check(CLI::ExistingFile);
    cmd->add_option("--set", f.overrides, "Override a config key: section.key=value (repeatable)");
    cmd->add_option("--out", f.out, "Output file, '-' for stdout");
    cmd->add_flag("--force", f.force, "Overwrite results written under a different manifest");
}

ConfigFile load_config(CommonFlags const& f) {
    ConfigFile cfg = f.config_path.empty() ? ConfigFile{} : ConfigFile::load(f.config_path);
    for (auto const& o : f.overrides) cfg.apply_override(o);
    if (f.convention) cfg.set("simulation.convention", *f.convention);
    cfg.require_known_keys(known_config_keys());
    return cfg;
}

void emit(CommonFlags const& f, std::string const& content, RunManifest const& manifest) {
    if (f.out == "-") {
        std::cout << content;
        return;
    }
    write_results_file(f.out, content, manifest, f.force);
}

nlohmann::json langevin_json(LangevinRun const& run) {
    nlohmann::json j = {{"temperature_K", run.params.temperature_K},
                        {"particle_radius_m", run.params.particle_radius_m},
                        {"viscosity_mPas", run.params.viscosity_mPas},
                        {"boltzmann_J_per_K", run.params.boltzmann_J_per_K},
                        {"frames_per_second", run.acq.frames_per_second},
                        {"observation_s", run.acq.observation_s},
                        {"particles", run.particle_count},
                        {"substeps_per_frame", run.substeps_per_frame},
                        {"thermal_noise", run.thermal_noise}};
    if (run.drive) {
        auto const& d = *run.drive;
        j["drive"] = {{"amplitude_N", d.amplitude_N},
                      {"frequency_Hz", d.frequency_Hz},
                      {"direction", {d.direction.x, d.direction.y, d.direction.z}},
                      {"phase_rad", d.phase_rad}};
    }
    std::visit(
        [&](auto const& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, Unbounded>) {
                j["geometry"] = {{"kind", "unbounded"}};
            } else if constexpr (std::is_same_v<G, HalfSpace>) {
                j["geometry"] = {{"kind", "halfspace"},
                                 {"normal", {g.normal.x, g.normal.y, g.normal.z}},
                                 {"offset_m", g.offset_m}};
            } else {
                nlohmann::json obstacles = nlohmann::json::array();
                for (auto const& o : g.obstacles) obstacles.push_back({o.center.x, o.center.y, o.center.z, o.radius_m});
                j["geometry"] = {{"kind", "box"}, {"edge_m", g.edge_m}, {"obstacles", obstacles}};
            }
        },
        run.geometry);
    return j;
}

int run_simulate(CommonFlags const& f, std::optional<std::uint64_t> seed, std::optional<std::string> drive,
                 std::optional<std::string> geometry, std::optional<std::size_t> particles, bool no_noise,
                 std::optional<double> obs, std::optional<double> fps) {
    ConfigFile cfg = load_config(f);
    if (seed) cfg.set("acquisition.seed", std::to_string(*seed));
    if (obs) cfg.set("acquisition.observation_s", format_double(*obs));
    if (fps) cfg.set("acquisition.frames_per_second", format_double(*fps));
    if (particles) cfg.set("simulation.particles", std::to_string(*particles));
    if (no_noise) cfg.set("simulation.thermal_noise", "false");
    LangevinRun run = langevin_from_config(cfg);
    if (drive) run.drive = parse_drive(*drive);
    if (geometry) run.geometry = parse_geometry(*geometry, run.acq.master_seed);
    run.validate();

    auto const paths = simulate_langevin(run);
    std::ostringstream csv;
    if (paths.size() == 1) {
        write_trajectory_csv(csv, paths.front());
    } else {
        write_particles_csv(csv, paths);
    }
    RunManifest manifest;
    manifest.config = langevin_json(run);
    manifest.convention = run.convention;
    manifest.generator = std::string(generator_description());
    manifest.master_seed = run.acq.master_seed;
    for (std::size_t p = 0; p < run.particle_count; ++p) {
        manifest.seeds.push_back(derive_seed(run.acq.master_seed, run.trial_index, p));
    }
    manifest.created_utc = current_utc_timestamp();
    emit(f, csv.str(), manifest);
    return 0;
}

int run_estimate(CommonFlags const& f, std::string const& input, std::string const& mode,
                 std::vector<std::size_t> factors) {
    ConfigFile cfg = load_config(f);
    PhysicalParams const p = physics_from_config(cfg);
    VarianceConvention const convention = convention_from_config(cfg);
    if (mode != "3d" && mode != "2d") throw InvalidArgument("--mode must be 3d or 2d");
    if (factors.empty()) factors.assign(kResolutionFactors.begin(), kResolutionFactors.end());
    std::sort(factors.begin(), factors.end());

    std::ifstream in(input);
    if (!in) throw InvalidArgument("cannot open " + input);
    Trajectory const traj = read_trajectory_csv(in);

    EstimateReport report;
    report.convention = convention;
    for (std::size_t factor : factors) {
        auto const coarse = subsample(traj, factor);
        MsdEstimate const e = mode == "3d" ? msd_at_lag(coarse, 1) : msd_at_lag(project_to_plane(coarse), 1);
        double const d = diffusion_from_msd(e, convention);
        double const eta = viscosity_from_diffusion(d, p.temperature_K, p.particle_radius_m, p.boltzmann_J_per_K);
        report.per_resolution.push_back({1.0 / coarse.dt_s, factor, e.sample_count, d, eta});
        report.ensemble.means.push_back(eta);
        report.ensemble.stds.push_back(0.0);
        report.ensemble.predicted_stds.push_back(eta * predicted_relative_std(e.sample_count));
    }

    RunManifest manifest;
    manifest.config = {{"input", input},
                       {"mode", mode},
                       {"factors", factors},
                       {"frames", traj.positions.size()},
                       {"dt_s", traj.dt_s},
                       {"temperature_K", p.temperature_K},
                       {"particle_radius_m", p.particle_radius_m},
                       {"boltzmann_J_per_K", p.boltzmann_J_per_K}};
    manifest.convention = convention;
    manifest.created_utc = current_utc_timestamp();
    report.config = manifest.config;
    report.config["manifest_hash"] = manifest.hash();
    emit(f, render_json(to_json(report)), manifest);
    return 0;
}

int run_ensemble_cmd(CommonFlags const& f, std::optional<double> obs, std::optional<double> fps,
                     std::optional<std::size_t> trials, std::optional<std::uint64_t> seed) {
    ConfigFile cfg = load_config(f);
    if (obs) cfg.set("acquisition.observation_s", format_double(*obs));
    if (fps) cfg.set("acquisition.frames_per_second", format_double(*fps));
    if (trials) cfg.set("acquisition.trials", std::to_string(*trials));
    if (seed) cfg.set("acquisition.seed", std::to_string(*seed));
    EnsembleOptions options;
    options.convention = convention_from_config(cfg);
    auto const result = run_ensemble(physics_from_config(cfg), acquisition_from_config(cfg), options);
    emit(f, render_json(to_json(result.report)), result.manifest);
    return 0;
}

int run_sweep_cmd(CommonFlags const& f, std::string const& spec_path) {
    CommonFlags with_spec = f;
    with_spec.config_path = spec_path;
    ConfigFile const cfg = load_config(with_spec);
    SweepSpec const spec = sweep_from_config(cfg);
    EnsembleOptions options;
    options.convention = convention_from_config(cfg);
    auto const rows = run_sweep(spec, options);
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    emit(f, csv.str(), sweep_manifest(spec, options));
    return 0;
}

int run_box1(CommonFlags const& f, std::uint64_t seed, double viscosity) {
    PhysicalParams params;
    params.viscosity_mPas = viscosity;
    params.validate();
    auto const verdict = reproduce_reference_table(seed, {}, params);
    std::cout << verdict.table();
    std::string const json = render_json(verdict.to_json());
    if (f.out == "-") {
        std::cout << json;
    } else {
        RunManifest manifest;
        manifest.config = {{"command", "box1"}, {"viscosity_mPas", viscosity}};
        manifest.generator = std::string(generator_description());
        manifest.master_seed = seed;
        manifest.created_utc = current_utc_timestamp();
        write_results_file(f.out, json, manifest, f.force);
    }
    return verdict.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nanoparticle-tracking viscometry simulator and estimators"};
    app.require_subcommand(1);

    CommonFlags sim_flags;
    std::optional<std::uint64_t> sim_seed;
    std::optional<std::string> sim_drive;
    std::optional<std::string> sim_geometry;
    std::optional<std::size_t> sim_particles;
    std::optional<double> sim_obs;
    std::optional<double> sim_fps;
    bool sim_no_noise = false;
    auto* simulate = app.add_subcommand("simulate", "Simulate trajectories and write them as CSV");
    add_common(simulate, sim_flags);
    simulate->add_option("--seed", sim_seed, "Master seed");
    simulate->add_option("--drive", sim_drive, "amplitude=N,frequency=Hz,direction=x:y:z,phase=rad");
    simulate->add_option("--geometry", sim_geometry,
                         "unbounded | halfspace:normal=x:y:z,offset=m | box:edge=m,radius=m,fraction=f");
    simulate->add_option("--particles", sim_particles, "Number of tracer particles");
    simulate->add_option("--obs", sim_obs, "Observation duration [s]");
    simulate->add_option("--fps", sim_fps, "Frame rate [1/s]");
    simulate->add_flag("--no-noise", sim_no_noise, "Disable thermal noise");
    simulate->add_option("--convention", sim_flags.convention, "total3d | per-coordinate");

    CommonFlags est_flags;
    std::string est_input;
    std::string est_mode = "2d";
    std::vector<std::size_t> est_factors;
    auto* estimate = app.add_subcommand("estimate", "Estimate D and viscosity from a trajectory CSV");
    add_common(estimate, est_flags);
    estimate->add_option("input,--in", est_input, "Trajectory CSV (t,x,y,z)")->required()->check(CLI::ExistingFile);
    estimate->add_option("--mode", est_mode, "3d or 2d (x-z projection with 3/2 correction)")
        ->check(CLI::IsMember({"3d", "2d"}));
    estimate->add_option("--factor", est_factors, "Subsampling factor(s); default 1 2 4")
        ->check(CLI::PositiveNumber);
    estimate->add_option("--convention", est_flags.convention, "total3d | per-coordinate");

    CommonFlags ens_flags;
    std::optional<double> ens_obs;
    std::optional<double> ens_fps;
    std::optional<std::size_t> ens_trials;
    std::optional<std::uint64_t> ens_seed;
    auto* ensemble = app.add_subcommand("ensemble", "Monte Carlo ensemble of viscosity estimates (JSON)");
    add_common(ensemble, ens_flags);
    ensemble->add_option("--obs", ens_obs, "Observation duration [s]");
    ensemble->add_option("--fps", ens_fps, "Frame rate [1/s]");
    ensemble->add_option("--trials", ens_trials, "Number of trials M");
    ensemble->add_option("--seed", ens_seed, "Master seed");
    ensemble->add_option("--convention", ens_flags.convention, "total3d | per-coordinate");

    CommonFlags sweep_flags;
    std::string sweep_spec;
    auto* sweep = app.add_subcommand("sweep", "Parameter sweep of ensembles (CSV)");
    add_common(sweep, sweep_flags);
    sweep->add_option("--spec", sweep_spec, "Sweep specification file")->required()->check(CLI::ExistingFile);

    CommonFlags box_flags;
    std::uint64_t box_seed = kCanonicalSeed;
    double box_viscosity = 1.0;
    auto* box1 = app.add_subcommand("box1", "Reproduce the reference RMSE table; exit 0 iff every cell passes");
    box1->add_option("--seed", box_seed, "Master seed");
    box1->add_option("--viscosity", box_viscosity, "True viscosity [mPa s]; targets scale with it");
    box1->add_option("--out", box_flags.out, "Verdict JSON file, '-' for stdout");
    box1->add_flag("--force", box_flags.force, "Overwrite results written under a different manifest");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            return run_simulate(sim_flags, sim_seed, sim_drive, sim_geometry, sim_particles, sim_no_noise, sim_obs,
                                sim_fps);
        }
        if (*estimate) return run_estimate(est_flags, est_input, est_mode, est_factors);
        if (*ensemble) return run_ensemble_cmd(ens_flags, ens_obs, ens_fps, ens_trials, ens_seed);
        if (*sweep) return run_sweep_cmd(sweep_flags, sweep_spec);
        if (*box1) return run_box1(box_flags, box_seed, box_viscosity);
    } catch (Error const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

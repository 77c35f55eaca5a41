#include "cytovisc/settings.hpp"

#include <charconv>
#include <string>

#include "cytovisc/errors.hpp"
#include "cytovisc/rng.hpp"

namespace cytovisc {
namespace {

double number(std::string_view text, std::string_view what) {
    double v = 0.0;
    auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(std::string(what) + ": not a number: '" + std::string(text) + "'");
    }
    return v;
}

Vec3 vector3(std::string_view text, std::string_view what) {
    double c[3];
    for (int i = 0; i < 3; ++i) {
        auto const sep = text.find(':');
        if ((i < 2) == (sep == std::string_view::npos)) {
            throw ParseError(std::string(what) + ": expected three ':'-separated components");
        }
        c[i] = number(text.substr(0, sep), what);
        if (sep != std::string_view::npos) text.remove_prefix(sep + 1);
    }
    return {c[0], c[1], c[2]};
}

Vec3 normalized(Vec3 v) {
    double const n = norm(v);
    if (!(n > 0.0)) throw InvalidArgument("direction vector must be non-zero");
    return v * (1.0 / n);
}

/// Splits "a=1,b=2" into (key, value) pairs.
std::vector<std::pair<std::string_view, std::string_view>> key_values(std::string_view text) {
    std::vector<std::pair<std::string_view, std::string_view>> out;
    while (!text.empty()) {
        auto const comma = text.find(',');
        auto item = text.substr(0, comma);
        auto const eq = item.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected key=value, got '" + std::string(item) + "'");
        out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

Vec3 config_vector(ConfigFile const& cfg, std::string const& key, Vec3 fallback) {
    auto list = cfg.get_list(key);
    if (!list) return fallback;
    if (list->size() != 3) throw ParseError("'" + key + "' needs three components");
    return {(*list)[0], (*list)[1], (*list)[2]};
}

}  // namespace

std::vector<std::string_view> const& known_config_keys() {
    static std::vector<std::string_view> const keys{
        "physics.temperature_K",        "physics.particle_radius_m",   "physics.viscosity_mPas",
        "physics.boltzmann_J_per_K",    "acquisition.frames_per_second", "acquisition.observation_s",
        "acquisition.trials",           "acquisition.seed",            "simulation.convention",
        "simulation.substeps_per_frame", "simulation.particles",       "simulation.thermal_noise",
        "drive.amplitude_N",            "drive.frequency_Hz",          "drive.direction",
        "drive.phase_rad",              "geometry.kind",               "geometry.normal",
        "geometry.offset_m",            "geometry.edge_m",             "geometry.obstacle_radius_m",
        "geometry.volume_fraction",     "sweep.observation_s",         "sweep.frames_per_second",
        "sweep.temperature_K",          "sweep.particle_radius_m",     "sweep.trials",
        "sweep.seed",                   "sweep.ceiling",
    };
    return keys;
}

PhysicalParams physics_from_config(ConfigFile const& cfg) {
    PhysicalParams p;
    p.temperature_K = cfg.get_double("physics.temperature_K").value_or(p.temperature_K);
    p.particle_radius_m = cfg.get_double("physics.particle_radius_m").value_or(p.particle_radius_m);
    p.viscosity_mPas = cfg.get_double("physics.viscosity_mPas").value_or(p.viscosity_mPas);
    p.boltzmann_J_per_K = cfg.get_double("physics.boltzmann_J_per_K").value_or(p.boltzmann_J_per_K);
    p.validate();
    return p;
}

AcquisitionConfig acquisition_from_config(ConfigFile const& cfg) {
    AcquisitionConfig a;
    a.frames_per_second = cfg.get_double("acquisition.frames_per_second").value_or(a.frames_per_second);
    a.observation_s = cfg.get_double("acquisition.observation_s").value_or(a.observation_s);
    a.trials = cfg.get_uint("acquisition.trials").value_or(a.trials);
    a.master_seed = cfg.get_uint("acquisition.seed").value_or(a.master_seed);
    a.validate();
    return a;
}

VarianceConvention convention_from_config(ConfigFile const& cfg) {
    auto const text = cfg.get_string("simulation.convention");
    return text ? parse_convention(*text) : VarianceConvention::total_3d;
}

SweepSpec sweep_from_config(ConfigFile const& cfg) {
    SweepSpec s;
    s.base = physics_from_config(cfg);
    s.observation_s = cfg.get_list("sweep.observation_s").value_or(s.observation_s);
    s.frames_per_second = cfg.get_list("sweep.frames_per_second").value_or(s.frames_per_second);
    s.temperature_K = cfg.get_list("sweep.temperature_K").value_or(std::vector<double>{s.base.temperature_K});
    s.particle_radius_m =
        cfg.get_list("sweep.particle_radius_m").value_or(std::vector<double>{s.base.particle_radius_m});
    s.trials = cfg.get_uint("sweep.trials").value_or(s.trials);
    s.master_seed = cfg.get_uint("sweep.seed").value_or(s.master_seed);
    s.ceiling = cfg.get_uint("sweep.ceiling").value_or(s.ceiling);
    s.validate();
    return s;
}

LangevinRun langevin_from_config(ConfigFile const& cfg) {
    LangevinRun run;
    run.params = physics_from_config(cfg);
    run.acq = acquisition_from_config(cfg);
    run.convention = convention_from_config(cfg);
    run.substeps_per_frame = cfg.get_uint("simulation.substeps_per_frame").value_or(run.substeps_per_frame);
    run.particle_count = cfg.get_uint("simulation.particles").value_or(run.particle_count);
    run.thermal_noise = cfg.get_bool("simulation.thermal_noise").value_or(run.thermal_noise);

    if (cfg.contains("drive.amplitude_N")) {
        DriveSpec d;
        d.amplitude_N = *cfg.get_double("drive.amplitude_N");
        d.frequency_Hz = cfg.get_double("drive.frequency_Hz").value_or(d.frequency_Hz);
        d.direction = normalized(config_vector(cfg, "drive.direction", d.direction));
        d.phase_rad = cfg.get_double("drive.phase_rad").value_or(d.phase_rad);
        run.drive = d;
    }

    std::string const kind = cfg.get_string("geometry.kind").value_or("unbounded");
    if (kind == "unbounded") {
        run.geometry = Unbounded{};
    } else if (kind == "halfspace") {
        HalfSpace wall;
        wall.normal = normalized(config_vector(cfg, "geometry.normal", wall.normal));
        wall.offset_m = cfg.get_double("geometry.offset_m").value_or(0.0);
        run.geometry = wall;
    } else if (kind == "box") {
        PeriodicBox box;
        auto const edge = cfg.get_double("geometry.edge_m");
        if (!edge) throw ParseError("geometry.kind = box requires geometry.edge_m");
        box.edge_m = *edge;
        double const fraction = cfg.get_double("geometry.volume_fraction").value_or(0.0);
        if (fraction > 0.0) {
            auto const radius = cfg.get_double("geometry.obstacle_radius_m");
            if (!radius) throw ParseError("geometry.volume_fraction requires geometry.obstacle_radius_m");
            box.obstacles = place_obstacles(box.edge_m, *radius, fraction, derive_seed(run.acq.master_seed, kLayoutStream, 1));
        }
        run.geometry = box;
    } else {
        throw ParseError("unknown geometry.kind '" + kind + "'");
    }
    run.validate();
    return run;
}

DriveSpec parse_drive(std::string_view spec) {
    DriveSpec d;
    for (auto const& [key, value] : key_values(spec)) {
        if (key == "amplitude") {
            d.amplitude_N = number(value, "drive amplitude");
        } else if (key == "frequency") {
            d.frequency_Hz = number(value, "drive frequency");
        } else if (key == "direction") {
            d.direction = normalized(vector3(value, "drive direction"));
        } else if (key == "phase") {
            d.phase_rad = number(value, "drive phase");
        } else {
            throw ParseError("unknown drive key '" + std::string(key) + "'");
        }
    }
    d.validate();
    return d;
}

Geometry parse_geometry(std::string_view spec, std::uint64_t seed) {
    auto const colon = spec.find(':');
    auto const kind = spec.substr(0, colon);
    auto const params = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
    if (kind == "unbounded") {
        if (!params.empty()) throw ParseError("unbounded geometry takes no parameters");
        return Unbounded{};
    }
    if (kind == "halfspace") {
        HalfSpace wall;
        for (auto const& [key, value] : key_values(params)) {
            if (key == "normal") {
                wall.normal = normalized(vector3(value, "wall normal"));
            } else if (key == "offset") {
                wall.offset_m = number(value, "wall offset");
            } else {
                throw ParseError("unknown halfspace key '" + std::string(key) + "'");
            }
        }
        return wall;
    }
    if (kind == "box") {
        double edge = 0.0;
        double radius = 0.0;
        double fraction = 0.0;
        for (auto const& [key, value] : key_values(params)) {
            if (key == "edge") {
                edge = number(value, "box edge");
            } else if (key == "radius") {
                radius = number(value, "obstacle radius");
            } else if (key == "fraction") {
                fraction = number(value, "volume fraction");
            } else {
                throw ParseError("unknown box key '" + std::string(key) + "'");
            }
        }
        PeriodicBox box{edge, {}};
        if (fraction > 0.0) box.obstacles = place_obstacles(edge, radius, fraction, derive_seed(seed, kLayoutStream, 1));
        validate_geometry(box);
        return box;
    }
    throw ParseError("unknown geometry '" + std::string(kind) + "'");
}

}  // namespace cytovisc

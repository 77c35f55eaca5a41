#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cytovisc/config.hpp"
#include "cytovisc/csv.hpp"
#include "cytovisc/errors.hpp"
#include "cytovisc/output.hpp"
#include "cytovisc/settings.hpp"

using namespace cytovisc;
namespace fs = std::filesystem;

TEST(Config, ParsesSectionsAndTypes) {
    auto const cfg = ConfigFile::parse(R"(
# comment
[physics]
temperature_K = 300   # trailing comment
viscosity_mPas = 2.5
[simulation]
convention = "per-coordinate"
thermal_noise = false
[sweep]
observation_s = [1, 10, 60]
trials = 50
)");
    EXPECT_DOUBLE_EQ(*cfg.get_double("physics.temperature_K"), 300.0);
    EXPECT_EQ(*cfg.get_string("simulation.convention"), "per-coordinate");
    EXPECT_FALSE(*cfg.get_bool("simulation.thermal_noise"));
    EXPECT_EQ(*cfg.get_list("sweep.observation_s"), (std::vector<double>{1, 10, 60}));
    EXPECT_EQ(*cfg.get_uint("sweep.trials"), 50u);
    EXPECT_FALSE(cfg.get_double("physics.particle_radius_m").has_value());
    EXPECT_NO_THROW(cfg.require_known_keys(known_config_keys()));

    auto const p = physics_from_config(cfg);
    EXPECT_DOUBLE_EQ(p.temperature_K, 300.0);
    EXPECT_DOUBLE_EQ(p.viscosity_mPas, 2.5);
    EXPECT_DOUBLE_EQ(p.particle_radius_m, 2e-8);
    EXPECT_EQ(convention_from_config(cfg), VarianceConvention::per_coordinate);
}

TEST(Config, OverridesReplaceValues) {
    auto cfg = ConfigFile::parse("[acquisition]\ntrials = 5\n");
    cfg.apply_override("acquisition.trials=7");
    cfg.apply_override("physics.temperature_K = 290");
    EXPECT_EQ(*cfg.get_uint("acquisition.trials"), 7u);
    EXPECT_DOUBLE_EQ(*cfg.get_double("physics.temperature_K"), 290.0);
    EXPECT_THROW(cfg.apply_override("no_equals_sign"), ParseError);
}

TEST(Config, RejectsMalformedInput) {
    EXPECT_THROW(ConfigFile::parse("[physics\n"), ParseError);
    EXPECT_THROW(ConfigFile::parse("just words\n"), ParseError);
    auto const cfg = ConfigFile::parse("[physics]\ntemperature_K = warm\ncolour = 3\n");
    EXPECT_THROW(cfg.get_double("physics.temperature_K"), ParseError);
    EXPECT_THROW(cfg.require_known_keys(known_config_keys()), ParseError);
}

TEST(Config, LangevinSections) {
    auto const cfg = ConfigFile::parse(R"(
[acquisition]
observation_s = 1
seed = 4
[drive]
amplitude_N = 1e-13
direction = [0, 0, 2]
[geometry]
kind = "halfspace"
normal = [0, 0, 1]
offset_m = -1e-7
)");
    auto const run = langevin_from_config(cfg);
    ASSERT_TRUE(run.drive.has_value());
    EXPECT_DOUBLE_EQ(run.drive->direction.z, 1.0);
    ASSERT_TRUE(std::holds_alternative<HalfSpace>(run.geometry));
    EXPECT_DOUBLE_EQ(std::get<HalfSpace>(run.geometry).offset_m, -1e-7);
}

TEST(Settings, ParseDrive) {
    auto const d = parse_drive("amplitude=2e-13,frequency=5,direction=0:3:4,phase=0.5");
    EXPECT_DOUBLE_EQ(d.amplitude_N, 2e-13);
    EXPECT_DOUBLE_EQ(d.frequency_Hz, 5.0);
    EXPECT_NEAR(d.direction.y, 0.6, 1e-15);
    EXPECT_NEAR(d.direction.z, 0.8, 1e-15);
    EXPECT_DOUBLE_EQ(d.phase_rad, 0.5);
    EXPECT_THROW(parse_drive("amplitude=1,colour=red"), ParseError);
    EXPECT_THROW(parse_drive("amplitude"), ParseError);
    EXPECT_THROW(parse_drive("direction=1:0"), ParseError);
}

TEST(Settings, ParseGeometry) {
    EXPECT_TRUE(std::holds_alternative<Unbounded>(parse_geometry("unbounded", 0)));
    auto const wall = std::get<HalfSpace>(parse_geometry("halfspace:normal=1:0:0,offset=2e-7", 0));
    EXPECT_DOUBLE_EQ(wall.normal.x, 1.0);
    EXPECT_DOUBLE_EQ(wall.offset_m, 2e-7);
    auto const box = std::get<PeriodicBox>(parse_geometry("box:edge=3e-6,radius=3e-7,fraction=0.2", 5));
    EXPECT_DOUBLE_EQ(box.edge_m, 3e-6);
    EXPECT_FALSE(box.obstacles.empty());
    auto const same = std::get<PeriodicBox>(parse_geometry("box:edge=3e-6,radius=3e-7,fraction=0.2", 5));
    ASSERT_EQ(same.obstacles.size(), box.obstacles.size());
    EXPECT_EQ(same.obstacles.front().center, box.obstacles.front().center);
    EXPECT_THROW(parse_geometry("sphere", 0), ParseError);
    EXPECT_THROW(parse_geometry("box:edge=-1", 0), InvalidArgument);
}

TEST(Csv, FormatDoubleRoundTrips) {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-1e-5, 1e-5);
    for (int i = 0; i < 1000; ++i) {
        double const v = u(gen);
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
}

TEST(Csv, TrajectoryRoundTrip) {
    auto const t = generate_wiener({}, {40.0, 2.0, 1, 3}, 0);
    std::stringstream buf;
    write_trajectory_csv(buf, t);
    std::string header;
    std::getline(buf, header);
    EXPECT_EQ(header, "t,x,y,z");
    buf.seekg(0);
    auto const back = read_trajectory_csv(buf);
    EXPECT_DOUBLE_EQ(back.dt_s, t.dt_s);
    EXPECT_EQ(back.positions, t.positions);
}

TEST(Csv, ParticlesRoundTrip) {
    LangevinRun run;
    run.acq = {10.0, 1.0, 1, 2};
    run.particle_count = 3;
    auto const paths = simulate_langevin(run);
    std::stringstream buf;
    write_particles_csv(buf, paths);
    auto const back = read_particles_csv(buf);
    ASSERT_EQ(back.size(), 3u);
    for (std::size_t p = 0; p < 3; ++p) EXPECT_EQ(back[p].positions, paths[p].positions);
}

TEST(Csv, RejectsMalformedFiles) {
    std::istringstream bad_header("time,x,y,z\n0,0,0,0\n");
    EXPECT_THROW(read_trajectory_csv(bad_header), ParseError);
    std::istringstream uneven("t,x,y,z\n0,0,0,0\n0.1,0,0,0\n0.3,0,0,0\n");
    EXPECT_THROW(read_trajectory_csv(uneven), ParseError);
    std::istringstream late_start("t,x,y,z\n1,0,0,0\n1.1,0,0,0\n");
    EXPECT_THROW(read_trajectory_csv(late_start), ParseError);
    std::istringstream garbage("t,x,y,z\n0,a,0,0\n");
    EXPECT_THROW(read_trajectory_csv(garbage), ParseError);
}

TEST(Output, RefusesToOverwriteDifferentRun) {
    fs::path const dir = fs::temp_directory_path() / "cytovisc_test_output";
    fs::remove_all(dir);
    fs::create_directories(dir);
    fs::path const file = dir / "result.json";

    RunManifest a;
    a.master_seed = 1;
    a.created_utc = "2020-01-01T00:00:00Z";
    RunManifest b = a;
    b.master_seed = 2;

    write_results_file(file, "first\n", a, false);
    EXPECT_TRUE(fs::exists(manifest_path(file)));
    RunManifest a_later = a;
    a_later.created_utc = "2021-01-01T00:00:00Z";
    EXPECT_NO_THROW(write_results_file(file, "again\n", a_later, false));
    EXPECT_THROW(write_results_file(file, "second\n", b, false), InvalidArgument);
    std::ifstream in(file);
    std::string content;
    std::getline(in, content);
    EXPECT_EQ(content, "again");
    EXPECT_NO_THROW(write_results_file(file, "forced\n", b, true));

    fs::path const unmanaged = dir / "foreign.csv";
    std::ofstream(unmanaged) << "x\n";
    EXPECT_THROW(write_results_file(unmanaged, "y\n", a, false), InvalidArgument);
    fs::remove_all(dir);
}

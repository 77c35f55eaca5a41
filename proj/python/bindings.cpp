#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cytovisc/errors.hpp"
#include "cytovisc/estimators.hpp"
#include "cytovisc/harness.hpp"
#include "cytovisc/langevin.hpp"
#include "cytovisc/settings.hpp"

namespace py = pybind11;
using namespace cytovisc;

namespace {

PhysicalParams physics(double temperature_K, double radius_m, double viscosity_mPas) {
    PhysicalParams p;
    p.temperature_K = temperature_K;
    p.particle_radius_m = radius_m;
    p.viscosity_mPas = viscosity_mPas;
    p.validate();
    return p;
}

py::array_t<double> to_array(Trajectory const& t) {
    py::array_t<double> out({static_cast<py::ssize_t>(t.positions.size()), py::ssize_t{3}});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < t.positions.size(); ++i) {
        auto const row = static_cast<py::ssize_t>(i);
        view(row, 0) = t.positions[i].x;
        view(row, 1) = t.positions[i].y;
        view(row, 2) = t.positions[i].z;
    }
    return out;
}

Trajectory from_array(py::array_t<double, py::array::c_style | py::array::forcecast> const& xyz, double dt_s) {
    if (xyz.ndim() != 2 || xyz.shape(1) != 3) throw InvalidArgument("positions must have shape (n, 3)");
    auto view = xyz.unchecked<2>();
    Trajectory t{dt_s, {}};
    for (py::ssize_t i = 0; i < xyz.shape(0); ++i) t.positions.push_back({view(i, 0), view(i, 1), view(i, 2)});
    return t;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native core of the cytovisc package";

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<NoRootError>(m, "NoRootError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<InvalidState>(m, "InvalidState", PyExc_RuntimeError);

    m.attr("__version__") = kVersion;

    m.def("einstein_diffusion",
          [](double temperature_K, double radius_m, double viscosity_mPas) {
              return einstein_diffusion(physics(temperature_K, radius_m, viscosity_mPas));
          },
          py::arg("temperature_K") = 310.0, py::arg("radius_m") = 2e-8, py::arg("viscosity_mPas") = 1.0);
    m.def("viscosity_from_diffusion",
          [](double d, double temperature_K, double radius_m) {
              return viscosity_from_diffusion(d, temperature_K, radius_m);
          },
          py::arg("diffusion_m2s"), py::arg("temperature_K") = 310.0, py::arg("radius_m") = 2e-8);
    m.def("stokes_force", &stokes_force, py::arg("radius_m"), py::arg("viscosity_mPas"), py::arg("velocity_m_s"));
    m.def("predicted_relative_std", &predicted_relative_std, py::arg("sample_count"));

    m.def("generate_wiener",
          [](double fps, double observation_s, std::uint64_t seed, std::uint64_t trial, double temperature_K,
             double radius_m, double viscosity_mPas, std::string const& convention) {
              AcquisitionConfig const acq{fps, observation_s, 1, seed};
              return to_array(generate_wiener(physics(temperature_K, radius_m, viscosity_mPas), acq, trial,
                                              parse_convention(convention)));
          },
          py::arg("fps") = 40.0, py::arg("observation_s") = 1.0, py::arg("seed") = 0, py::arg("trial") = 0,
          py::arg("temperature_K") = 310.0, py::arg("radius_m") = 2e-8, py::arg("viscosity_mPas") = 1.0,
          py::arg("convention") = "total3d");

    m.def("estimate_diffusion",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> const& xyz, double dt_s,
             std::size_t factor, bool planar, std::string const& convention) {
              Trajectory const t = subsample(from_array(xyz, dt_s), factor);
              auto const conv = parse_convention(convention);
              return planar ? diffusion_from_msd(msd_at_lag(project_to_plane(t), 1), conv)
                            : diffusion_from_msd(msd_at_lag(t, 1), conv);
          },
          py::arg("positions"), py::arg("dt_s"), py::arg("factor") = 1, py::arg("planar") = true,
          py::arg("convention") = "total3d");

    m.def("stay_probability",
          [](double d, double w, double tau, std::string const& convention) {
              return stay_probability(d, w, tau, parse_convention(convention));
          },
          py::arg("diffusion_m2s"), py::arg("window_width_m"), py::arg("tau_s"), py::arg("convention") = "total3d");

    m.def("run_ensemble_json",
          [](double fps, double observation_s, std::size_t trials, std::uint64_t seed, double temperature_K,
             double radius_m, double viscosity_mPas, std::string const& convention) {
              EnsembleOptions options;
              options.convention = parse_convention(convention);
              AcquisitionConfig const acq{fps, observation_s, trials, seed};
              EnsembleResult res;
              {
                  py::gil_scoped_release release;
                  res = run_ensemble(physics(temperature_K, radius_m, viscosity_mPas), acq, options);
              }
              return render_json(to_json(res.report));
          },
          py::arg("fps") = 40.0, py::arg("observation_s") = 240.0, py::arg("trials") = 100, py::arg("seed") = 0,
          py::arg("temperature_K") = 310.0, py::arg("radius_m") = 2e-8, py::arg("viscosity_mPas") = 1.0,
          py::arg("convention") = "total3d");

    m.def("reproduce_box1_json",
          [](std::uint64_t seed) {
              py::gil_scoped_release release;
              return reproduce_reference_table(seed).to_json().dump();
          },
          py::arg("seed") = kCanonicalSeed);

    m.def("simulate_langevin",
          [](double fps, double observation_s, std::uint64_t seed, std::size_t particles, std::string const& drive,
             std::string const& geometry, bool thermal_noise, std::size_t substeps) {
              LangevinRun run;
              run.acq = {fps, observation_s, 1, seed};
              run.particle_count = particles;
              run.thermal_noise = thermal_noise;
              run.substeps_per_frame = substeps;
              if (!drive.empty()) run.drive = parse_drive(drive);
              run.geometry = parse_geometry(geometry, seed);
              std::vector<Trajectory> paths;
              {
                  py::gil_scoped_release release;
                  paths = simulate_langevin(run);
              }
              py::list out;
              for (auto const& t : paths) out.append(to_array(t));
              return out;
          },
          py::arg("fps") = 40.0, py::arg("observation_s") = 1.0, py::arg("seed") = 0, py::arg("particles") = 1,
          py::arg("drive") = "", py::arg("geometry") = "unbounded", py::arg("thermal_noise") = true,
          py::arg("substeps") = 100);
}

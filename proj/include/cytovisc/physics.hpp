#pragma once

namespace cytovisc {

/// Boltzmann constant used throughout; the rounded value keeps reference
/// tables reproducible. Override through PhysicalParams when CODATA precision
/// matters.
inline constexpr double kBoltzmannDefault = 1.38e-23;
inline constexpr double kMilliPascalSecond = 1e-3;  // Pa*s per mPa*s
inline constexpr double kPi = 3.14159265358979323846;

/// Physical ground truth of a run. Viscosity is given in mPa*s; everything
/// else is SI.
struct PhysicalParams {
    double temperature_K = 310.0;
    double particle_radius_m = 2e-8;
    double viscosity_mPas = 1.0;
    double boltzmann_J_per_K = kBoltzmannDefault;

    /// Throws InvalidArgument unless all fields are positive and the radius
    /// lies in (1 nm, 1 um).
    void validate() const;
};

/// Arrhenius-type temperature dependence eta(T) = A * exp(b / T).
struct ViscosityTempModel {
    double prefactor_mPas = 1.0;
    double exponent_K = 0.0;
};

/// Stokes drag coefficient 6*pi*a*eta in kg/s.
double drag_coefficient(double radius_m, double viscosity_mPas);

/// Stokes-Einstein diffusion coefficient k_B T / (6 pi a eta) in m^2/s.
double einstein_diffusion(PhysicalParams const& p);

/// Inverse of einstein_diffusion; returns mPa*s. Throws for D <= 0.
double viscosity_from_diffusion(double diffusion_m2s, double temperature_K, double radius_m,
                                double boltzmann_J_per_K = kBoltzmannDefault);

/// Stokes' law F = 6 pi a eta v, newtons.
double stokes_force(double radius_m, double viscosity_mPas, double velocity_mps);

double viscosity_at_temperature(ViscosityTempModel const& model, double temperature_K);

}  // namespace cytovisc

#include "cytovisc/physics.hpp"

#include <cmath>
#include <string>

#include "cytovisc/errors.hpp"

namespace cytovisc {

void PhysicalParams::validate() const {
    if (!(temperature_K > 0.0)) throw InvalidArgument("temperature_K must be positive");
    if (!(viscosity_mPas > 0.0)) throw InvalidArgument("viscosity_mPas must be positive");
    if (!(boltzmann_J_per_K > 0.0)) throw InvalidArgument("boltzmann_J_per_K must be positive");
    if (!(particle_radius_m > 1e-9 && particle_radius_m < 1e-6)) {
        throw InvalidArgument("particle_radius_m must lie in (1e-9, 1e-6), got " +
                              std::to_string(particle_radius_m));
    }
}

double drag_coefficient(double radius_m, double viscosity_mPas) {
    return 6.0 * kPi * radius_m * viscosity_mPas * kMilliPascalSecond;
}

double einstein_diffusion(PhysicalParams const& p) {
    p.validate();
    return p.boltzmann_J_per_K * p.temperature_K / drag_coefficient(p.particle_radius_m, p.viscosity_mPas);
}

double viscosity_from_diffusion(double diffusion_m2s, double temperature_K, double radius_m,
                                double boltzmann_J_per_K) {
    if (!(diffusion_m2s > 0.0)) throw InvalidArgument("diffusion estimate must be positive");
    if (!(temperature_K > 0.0) || !(radius_m > 0.0)) {
        throw InvalidArgument("temperature and radius must be positive");
    }
    double const eta_si = boltzmann_J_per_K * temperature_K / (6.0 * kPi * radius_m * diffusion_m2s);
    return eta_si / kMilliPascalSecond;
}

double stokes_force(double radius_m, double viscosity_mPas, double velocity_mps) {
    if (!(radius_m > 0.0) || !(viscosity_mPas > 0.0)) {
        throw InvalidArgument("radius and viscosity must be positive");
    }
    return drag_coefficient(radius_m, viscosity_mPas) * velocity_mps;
}

double viscosity_at_temperature(ViscosityTempModel const& model, double temperature_K) {
    if (!(temperature_K > 0.0)) throw InvalidArgument("temperature must be positive");
    if (!(model.prefactor_mPas > 0.0)) throw InvalidArgument("Arrhenius prefactor must be positive");
    return model.prefactor_mPas * std::exp(model.exponent_K / temperature_K);
}

}  // namespace cytovisc

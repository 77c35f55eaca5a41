#include <gtest/gtest.h>

#include <cmath>

#include "cytovisc/errors.hpp"
#include "cytovisc/physics.hpp"

using namespace cytovisc;

namespace {

PhysicalParams reference_params() { return {310.0, 2e-8, 1.0, 1.38e-23}; }

}  // namespace

TEST(Physics, EinsteinDiffusionReferenceValue) {
    // 1.38e-23 * 310 / (6 pi 2e-8 1e-3), evaluated independently
    EXPECT_NEAR(einstein_diffusion(reference_params()), 1.1347747442452137e-11, 1e-24);
}

TEST(Physics, DiffusionHalvesWhenViscosityDoubles) {
    auto p = reference_params();
    double const d1 = einstein_diffusion(p);
    p.viscosity_mPas = 2.0;
    EXPECT_DOUBLE_EQ(einstein_diffusion(p), 0.5 * d1);
}

TEST(Physics, DiffusionScalingLaws) {
    auto const base = reference_params();
    double const d = einstein_diffusion(base);
    auto p = base;
    p.temperature_K *= 2.0;
    EXPECT_NEAR(einstein_diffusion(p) / d, 2.0, 1e-14);
    p = base;
    p.particle_radius_m *= 2.0;
    EXPECT_NEAR(einstein_diffusion(p) / d, 0.5, 1e-14);
    p = base;
    p.viscosity_mPas *= 2.0;
    EXPECT_NEAR(einstein_diffusion(p) / d, 0.5, 1e-14);
}

TEST(Physics, ViscosityFromDiffusionInvertsEinstein) {
    EXPECT_NEAR(viscosity_from_diffusion(1.1348e-11, 310.0, 2e-8), 1.0, 1e-4);
    for (double eta : {0.3, 1.0, 2.5, 17.0}) {
        auto p = reference_params();
        p.viscosity_mPas = eta;
        double const back = viscosity_from_diffusion(einstein_diffusion(p), p.temperature_K, p.particle_radius_m);
        EXPECT_LT(std::abs(back - eta) / eta, 1e-12);
    }
}

TEST(Physics, HalvingDiffusionDoublesViscosity) {
    double const eta = viscosity_from_diffusion(2e-12, 300.0, 5e-8);
    EXPECT_NEAR(viscosity_from_diffusion(1e-12, 300.0, 5e-8), 2.0 * eta, 1e-12 * eta);
}

TEST(Physics, ViscosityFromDiffusionRejectsNonPositive) {
    EXPECT_THROW(viscosity_from_diffusion(0.0, 310.0, 2e-8), InvalidArgument);
    EXPECT_THROW(viscosity_from_diffusion(-1e-12, 310.0, 2e-8), InvalidArgument);
}

TEST(Physics, TissueScaleDiffusionGivesWaterLikeViscosity) {
    // a 20 nm tracer diffusing at ~1.13e-11 m^2/s at body temperature sees about 1 mPa s
    double const eta = viscosity_from_diffusion(1.13e-11, 310.0, 2e-8);
    EXPECT_GT(eta, 0.9);
    EXPECT_LT(eta, 1.1);
}

TEST(Physics, StokesForce) {
    EXPECT_NEAR(stokes_force(2e-8, 1.0, 1e-6), 3.769911184307752e-16, 1e-28);
    EXPECT_EQ(stokes_force(2e-8, 1.0, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(stokes_force(2e-8, 1.0, -1e-6), -stokes_force(2e-8, 1.0, 1e-6));
    double const f = stokes_force(2e-8, 1.0, 1e-6);
    EXPECT_NEAR(stokes_force(4e-8, 1.0, 1e-6), 2.0 * f, 1e-14 * f);
    EXPECT_NEAR(stokes_force(2e-8, 3.0, 1e-6), 3.0 * f, 1e-14 * f);
    EXPECT_NEAR(stokes_force(2e-8, 1.0, 5e-6), 5.0 * f, 1e-14 * f);
    EXPECT_THROW(stokes_force(0.0, 1.0, 1.0), InvalidArgument);
}

TEST(Physics, ArrheniusViscosity) {
    EXPECT_DOUBLE_EQ(viscosity_at_temperature({2.0, 0.0}, 280.0), 2.0);
    EXPECT_DOUBLE_EQ(viscosity_at_temperature({2.0, 0.0}, 330.0), 2.0);
    EXPECT_NEAR(viscosity_at_temperature({1.0, 310.0}, 310.0), std::exp(1.0), 1e-15);
    ViscosityTempModel const m{0.01, 1500.0};
    EXPECT_GT(viscosity_at_temperature(m, 290.0), viscosity_at_temperature(m, 300.0));
    EXPECT_GT(viscosity_at_temperature(m, 300.0), viscosity_at_temperature(m, 310.0));
    EXPECT_THROW(viscosity_at_temperature(m, 0.0), InvalidArgument);
}

TEST(Physics, ParamsValidation) {
    auto p = reference_params();
    EXPECT_NO_THROW(p.validate());
    p.particle_radius_m = 5e-10;
    EXPECT_THROW(p.validate(), InvalidArgument);
    p.particle_radius_m = 2e-6;
    EXPECT_THROW(p.validate(), InvalidArgument);
    p = reference_params();
    p.temperature_K = -1.0;
    EXPECT_THROW(p.validate(), InvalidArgument);
    p = reference_params();
    p.viscosity_mPas = 0.0;
    EXPECT_THROW(einstein_diffusion(p), InvalidArgument);
}

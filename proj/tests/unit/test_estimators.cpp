#include <gtest/gtest.h>

#include <cmath>

#include "cytovisc/errors.hpp"
#include "cytovisc/estimators.hpp"
#include "stats_helpers.hpp"

using namespace cytovisc;
using namespace cytovisc::testing;

namespace {

AcquisitionConfig acq(double obs, std::uint64_t seed = 1) { return {40.0, obs, 1, seed}; }

double eta_of(double d) { return viscosity_from_diffusion(d, 310.0, 2e-8); }

}  // namespace

TEST(Msd, ConstantTrajectoryIsZero) {
    Trajectory t{0.025, std::vector<Vec3>(10, Vec3{1e-6, 2e-6, 3e-6})};
    auto const e = msd_at_lag(t, 1);
    EXPECT_EQ(e.msd_m2, 0.0);
    EXPECT_EQ(e.sample_count, 9u);
    EXPECT_EQ(e.dimension_mode, DimensionMode::full_3d);
}

TEST(Msd, UniformStepsGiveStepSquared) {
    constexpr double kStep = 3e-8;
    Trajectory t{0.025, {}};
    for (int i = 0; i < 20; ++i) t.positions.push_back({kStep * i, 0, 0});
    EXPECT_NEAR(msd_at_lag(t, 1).msd_m2, kStep * kStep, 1e-30);
    EXPECT_NEAR(msd_at_lag(t, 3).msd_m2, 9 * kStep * kStep, 1e-29);
    EXPECT_DOUBLE_EQ(msd_at_lag(t, 3).lag_s, 0.075);
    auto const planar = msd_at_lag(project_to_plane(t), 1);
    EXPECT_EQ(planar.dimension_mode, DimensionMode::projected_2d_corrected);
    EXPECT_NEAR(planar.msd_m2, kStep * kStep, 1e-30);
}

TEST(Msd, LagOutOfRangeRejected) {
    Trajectory t{0.025, std::vector<Vec3>(5)};
    EXPECT_THROW(msd_at_lag(t, 0), InvalidArgument);
    EXPECT_THROW(msd_at_lag(t, 5), InvalidArgument);
    EXPECT_NO_THROW(msd_at_lag(t, 4));
}

TEST(Msd, WienerLagOneConcentratesAroundTwoDdt) {
    double const expected = 2.0 * einstein_diffusion({}) / 40.0;
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
        auto const e = msd_at_lag(generate_wiener({}, acq(240.0), trial), 1);
        EXPECT_LT(relative_difference(e.msd_m2, expected), 4.0 / std::sqrt(static_cast<double>(e.sample_count)));
    }
}

TEST(DiffusionFromMsd, ProjectedCorrectionRecoversDExactly) {
    double const d = 1.1347747442452137e-11;
    double const dt = 0.025;
    MsdEstimate const planar{dt, 2.0 / 3.0 * 2.0 * d * dt, 100, DimensionMode::projected_2d_corrected};
    EXPECT_NEAR(diffusion_from_msd(planar), d, 1e-12 * d);
    MsdEstimate const full{dt, 2.0 * d * dt, 100, DimensionMode::full_3d};
    EXPECT_NEAR(diffusion_from_msd(full), d, 1e-12 * d);
}

TEST(DiffusionFromMsd, CoarserLagsUseMultipleOfH) {
    // estimates at 2h and 4h divide by 2*2h and 2*4h
    MsdEstimate e2{0.05, 3e-13, 10, DimensionMode::projected_2d_corrected};
    MsdEstimate e4{0.1, 3e-13, 10, DimensionMode::projected_2d_corrected};
    EXPECT_NEAR(diffusion_from_msd(e2), 1.5 * 3e-13 / (2 * 2 * 0.025), 1e-25);
    EXPECT_NEAR(diffusion_from_msd(e4), 1.5 * 3e-13 / (2 * 4 * 0.025), 1e-25);
}

TEST(DiffusionFromMsd, PerCoordinateConvention) {
    MsdEstimate const full{0.1, 6e-12, 10, DimensionMode::full_3d};
    EXPECT_NEAR(diffusion_from_msd(full, VarianceConvention::per_coordinate), 6e-12 / (6 * 0.1), 1e-24);
    MsdEstimate const planar{0.1, 4e-12, 10, DimensionMode::projected_2d_corrected};
    EXPECT_NEAR(diffusion_from_msd(planar, VarianceConvention::per_coordinate), 4e-12 / (4 * 0.1), 1e-24);
}

TEST(DiffusionFromMsd, HistoricalFactorBiasesViscosity) {
    MsdEstimate const planar{0.025, 3e-13, 100, DimensionMode::projected_2d_corrected};
    double const good = eta_of(diffusion_from_msd(planar));
    double const biased = eta_of(diffusion_from_msd(planar, VarianceConvention::total_3d,
                                                    ProjectionFactor::historical_four_over_pi));
    EXPECT_NEAR(biased / good, 1.1780972450961724, 1e-12);
    // the historical factor is irrelevant for spatial MSDs
    MsdEstimate const full{0.025, 3e-13, 100, DimensionMode::full_3d};
    EXPECT_EQ(diffusion_from_msd(full, VarianceConvention::total_3d, ProjectionFactor::historical_four_over_pi),
              diffusion_from_msd(full));
}

TEST(DiffusionFromMsd, ProjectionConsistency) {
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        auto const t = generate_wiener({}, acq(240.0, 3), trial);
        double const eta3 = eta_of(diffusion_from_msd(msd_at_lag(t, 1)));
        auto const planar = msd_at_lag(project_to_plane(t), 1);
        double const eta2 = eta_of(diffusion_from_msd(planar));
        EXPECT_LE(std::abs(eta2 - eta3), 3.0 * predicted_relative_std(planar.sample_count) * eta3);
    }
}

TEST(DiffusionFromMsd, MultiLagFitAgreesWithTruth) {
    double const d = einstein_diffusion({});
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
        auto const t = generate_wiener({}, acq(240.0, 4), trial);
        EXPECT_LT(relative_difference(diffusion_multilag_fit(t, 4), d), 0.05);
    }
}

TEST(PredictedStd, InverseSquareRoot) {
    EXPECT_NEAR(predicted_relative_std(2400), 0.0204, 5e-5);
    EXPECT_NEAR(predicted_relative_std(9600), 0.0102, 5e-5);
    EXPECT_DOUBLE_EQ(predicted_relative_std(1), 1.0);
    EXPECT_THROW(predicted_relative_std(0), InvalidArgument);
}

// --- driven estimator ---------------------------------------------------------

namespace {

LangevinRun driven_run(double amplitude_N, bool noise, double phase = 0.0, std::uint64_t trial = 0) {
    LangevinRun run;
    run.acq = {40.0, 10.0, 1, 17};
    run.thermal_noise = noise;
    run.trial_index = trial;
    DriveSpec d;
    d.amplitude_N = amplitude_N;
    d.frequency_Hz = 10.0;
    d.phase_rad = phase;
    run.drive = d;
    return run;
}

}  // namespace

TEST(DrivenEstimator, NoiselessRecoversViscosity) {
    auto const run = driven_run(1e-13, false);
    auto const est = estimate_viscosity_driven(simulate_langevin(run).front(), *run.drive, 2e-8);
    EXPECT_LT(relative_difference(est.viscosity_mPas, 1.0), 1e-3);
    EXPECT_TRUE(est.reliable);
}

TEST(DrivenEstimator, AmplitudeLinearInForce) {
    auto const r1 = driven_run(1e-13, false);
    auto const r2 = driven_run(2e-13, false);
    auto const e1 = estimate_viscosity_driven(simulate_langevin(r1).front(), *r1.drive, 2e-8);
    auto const e2 = estimate_viscosity_driven(simulate_langevin(r2).front(), *r2.drive, 2e-8);
    EXPECT_NEAR(e2.amplitude_m / e1.amplitude_m, 2.0, 1e-6);
    EXPECT_NEAR(e2.viscosity_mPas, e1.viscosity_mPas, 1e-6);
}

TEST(DrivenEstimator, PhaseInvariant) {
    for (double phase : {0.0, 0.7, 2.0, 4.5}) {
        auto const run = driven_run(1e-13, false, phase);
        auto const est = estimate_viscosity_driven(simulate_langevin(run).front(), *run.drive, 2e-8);
        EXPECT_LT(relative_difference(est.viscosity_mPas, 1.0), 1e-3) << "phase " << phase;
    }
}

TEST(DrivenEstimator, WeakDriveFlaggedUnreliable) {
    auto const run = driven_run(1e-19, true);
    auto const est = estimate_viscosity_driven(simulate_langevin(run).front(), *run.drive, 2e-8);
    EXPECT_FALSE(est.reliable);
}

TEST(DrivenEstimator, RejectsShortOrUndrivenTrajectories) {
    auto run = driven_run(1e-13, false);
    run.acq.observation_s = 0.25;  // 2.5 periods
    auto const path = simulate_langevin(run).front();
    EXPECT_THROW(estimate_viscosity_driven(path, *run.drive, 2e-8), InvalidArgument);
    DriveSpec off = *run.drive;
    off.amplitude_N = 0.0;
    EXPECT_THROW(estimate_viscosity_driven(path, off, 2e-8), InvalidArgument);
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cytovisc/errors.hpp"
#include "cytovisc/estimators.hpp"
#include "stats_helpers.hpp"

using namespace cytovisc;

namespace {

// Direct Monte Carlo of the stay probability: uniform start, one Gaussian step.
std::pair<double, double> stay_by_sampling(double d, double w, double tau, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> start(0.0, w);
    std::normal_distribution<double> step(0.0, std::sqrt(coordinate_variance_rate(d, VarianceConvention::total_3d) * tau));
    std::size_t stayed = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double const x = start(gen) + step(gen);
        if (x >= 0.0 && x < w) ++stayed;
    }
    double const p = static_cast<double>(stayed) / static_cast<double>(n);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

}  // namespace

TEST(StayProbability, Limits) {
    double const d = einstein_diffusion({});
    EXPECT_NEAR(stay_probability(d, 1e-6, 1e-9), 1.0, 1e-3);
    // for sigma >> w the probability tends to w / (sigma sqrt(2 pi))
    double const sigma = std::sqrt(coordinate_variance_rate(d, VarianceConvention::total_3d) * 1e3);
    EXPECT_NEAR(stay_probability(d, 1e-6, 1e3), 1e-6 / (sigma * std::sqrt(2.0 * kPi)), 1e-5);
    EXPECT_THROW(stay_probability(0.0, 1e-6, 0.1), InvalidArgument);
    EXPECT_THROW(stay_probability(d, -1e-6, 0.1), InvalidArgument);
    EXPECT_THROW(stay_probability(d, 1e-6, 0.0), InvalidArgument);
}

TEST(StayProbability, NarrowKernelClosedForm) {
    // for sigma << w the loss is 2 * sigma / (w sqrt(2 pi))
    double const d = einstein_diffusion({});
    double const w = 1e-5;
    double const tau = 1e-3;
    double const sigma = std::sqrt(coordinate_variance_rate(d, VarianceConvention::total_3d) * tau);
    EXPECT_NEAR(stay_probability(d, w, tau), 1.0 - 2.0 * sigma / (w * std::sqrt(2.0 * kPi)), 1e-9);
}

TEST(StayProbability, MatchesSampling) {
    double const d = einstein_diffusion({});
    std::uint64_t seed = 1;
    for (double w : {1e-6, 2e-6, 4e-6}) {
        for (double tau : {0.05, 0.1, 0.4}) {
            auto const [p, se] = stay_by_sampling(d, w, tau, 200000, seed++);
            EXPECT_LT(std::abs(stay_probability(d, w, tau) - p), 3.0 * se) << "w=" << w << " tau=" << tau;
        }
    }
}

TEST(StayProbability, MonotoneInWidthAndTime) {
    double const d = einstein_diffusion({});
    double prev = 0.0;
    for (double w : {0.5e-6, 1e-6, 2e-6, 4e-6, 8e-6}) {
        double const p = stay_probability(d, w, 0.1);
        EXPECT_GT(p, prev);
        prev = p;
    }
    prev = 1.0;
    for (double tau : {0.01, 0.05, 0.1, 0.5, 2.0}) {
        double const p = stay_probability(d, 1e-6, tau);
        EXPECT_LT(p, prev);
        prev = p;
    }
}

TEST(Counting, WindowValidation) {
    CountingWindow w{Axis::x, 2e-6, 1e-6, 0.1};
    EXPECT_THROW(w.validate(5e-6), InvalidArgument);
    w = {Axis::x, 0.0, 1e-6, 0.1};
    EXPECT_THROW(w.validate(5e-6), InvalidArgument);
    w = {Axis::x, 1e-6, 5e-6, 0.1};
    EXPECT_THROW(w.validate(5e-6), InvalidArgument);
    w = {Axis::x, 1e-6, 2e-6, 0.0};
    EXPECT_THROW(w.validate(5e-6), InvalidArgument);
    w = {Axis::x, 1e-6, 2e-6, 0.1};
    EXPECT_NO_THROW(w.validate(5e-6));
}

TEST(Counting, FrozenParticlesHaveNoRoot) {
    std::vector<Trajectory> particles;
    for (int i = 0; i < 10; ++i) {
        particles.push_back({0.1, std::vector<Vec3>(20, Vec3{(0.5 + 0.45 * i) * 1e-6, 0, 0})});
    }
    CountingWindow const w{Axis::x, 1e-6, 3e-6, 0.1};
    auto const snaps = count_in_window(particles, w, 5e-6);
    ASSERT_EQ(snaps.size(), 20u);
    EXPECT_DOUBLE_EQ(observed_stay_fraction(snaps), 1.0);
    EXPECT_THROW(estimate_diffusion_from_counts(snaps, w), NoRootError);
}

TEST(Counting, SamplePeriodMustBeWholeFrames) {
    std::vector<Trajectory> particles{{0.1, std::vector<Vec3>(10, Vec3{1.5e-6, 0, 0})}};
    CountingWindow const w{Axis::x, 1e-6, 3e-6, 0.15};
    EXPECT_THROW(count_in_window(particles, w, 5e-6), InvalidArgument);
}

TEST(Counting, CountsWrapAcrossPeriodicBoundary) {
    std::vector<Trajectory> particles{{0.1, {Vec3{6.5e-6, 0, 0}, Vec3{-3.5e-6, 0, 0}, Vec3{0.5e-6, 0, 0}}}};
    CountingWindow const w{Axis::x, 1e-6, 2e-6, 0.1};
    auto const snaps = count_in_window(particles, w, 5e-6);
    EXPECT_EQ(snaps[0].inside.size(), 1u);
    EXPECT_EQ(snaps[1].inside.size(), 1u);
    EXPECT_EQ(snaps[2].inside.size(), 0u);
}

TEST(Counting, RecoversDiffusionFromSimulatedBox) {
    LangevinRun run;
    run.acq = {10.0, 20.0, 1, 31};
    run.particle_count = 200;
    run.substeps_per_frame = 20;
    run.geometry = PeriodicBox{5e-6, {}};
    auto const particles = simulate_langevin(run);
    CountingWindow const w{Axis::x, 2e-6, 3e-6, 0.1};
    double const d = estimate_diffusion_from_counts(count_in_window(particles, w, 5e-6), w);
    EXPECT_LT(cytovisc::testing::relative_difference(d, einstein_diffusion(run.params)), 0.15);
}

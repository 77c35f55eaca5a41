#include "cytovisc/estimators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <iterator>
#include <sstream>
#include <string>

#include "cytovisc/errors.hpp"

namespace cytovisc {
namespace {

template <class Path>
MsdEstimate msd_impl(Path const& t, std::size_t lag, DimensionMode mode) {
    std::size_t const n = t.positions.size();
    if (lag < 1 || lag >= n) {
        throw InvalidArgument("lag of " + std::to_string(lag) + " frames needs more than " + std::to_string(n) +
                              " positions");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) {
        auto const& a = t.positions[i];
        auto const& b = t.positions[i + lag];
        if constexpr (std::is_same_v<Path, Trajectory>) {
            sum += norm2(b - a);
        } else {
            sum += norm2(Vec2{b.x - a.x, b.z - a.z});
        }
    }
    std::size_t const count = n - lag;
    return {t.dt_s * static_cast<double>(lag), sum / static_cast<double>(count), count, mode};
}

double dimensions(DimensionMode m) noexcept { return m == DimensionMode::full_3d ? 3.0 : 2.0; }

double standard_normal_cdf(double u) noexcept { return 0.5 * std::erfc(-u / std::sqrt(2.0)); }

}  // namespace

std::string_view to_string(DimensionMode m) noexcept {
    return m == DimensionMode::full_3d ? "full_3d" : "projected_2d_corrected";
}

MsdEstimate msd_at_lag(Trajectory const& t, std::size_t lag_frames) {
    return msd_impl(t, lag_frames, DimensionMode::full_3d);
}

MsdEstimate msd_at_lag(Trajectory2D const& t, std::size_t lag_frames) {
    return msd_impl(t, lag_frames, DimensionMode::projected_2d_corrected);
}

double diffusion_from_msd(MsdEstimate const& e, VarianceConvention convention, ProjectionFactor projection) {
    if (!(e.lag_s > 0.0)) throw InvalidArgument("MSD lag must be positive");
    // msd = k * rate * lag, rate = coordinate_variance_rate(D)
    double const rate_per_D = coordinate_variance_rate(1.0, convention);
    double d = e.msd_m2 / (dimensions(e.dimension_mode) * e.lag_s * rate_per_D);
    if (e.dimension_mode == DimensionMode::projected_2d_corrected &&
        projection == ProjectionFactor::historical_four_over_pi) {
        d *= (4.0 / kPi) / 1.5;
    }
    return d;
}

double diffusion_multilag_fit(Trajectory const& t, std::size_t max_lag, VarianceConvention convention) {
    if (max_lag < 1) throw InvalidArgument("max_lag must be at least 1");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        auto const e = msd_at_lag(t, lag);
        double const w = static_cast<double>(e.sample_count) / static_cast<double>(lag * lag);
        num += w * e.lag_s * e.msd_m2;
        den += w * e.lag_s * e.lag_s;
    }
    double const slope = num / den;  // m^2/s
    return slope / (3.0 * coordinate_variance_rate(1.0, convention));
}

double predicted_relative_std(std::size_t sample_count) {
    if (sample_count < 1) throw InvalidArgument("sample count must be at least 1");
    return 1.0 / std::sqrt(static_cast<double>(sample_count));
}

DrivenEstimate estimate_viscosity_driven(Trajectory const& t, DriveSpec const& drive, double radius_m) {
    drive.validate();
    if (!(drive.amplitude_N > 0.0)) throw InvalidArgument("drive amplitude must be positive");
    if (!(radius_m > 0.0)) throw InvalidArgument("radius must be positive");
    if (t.duration_s() * drive.frequency_Hz < 5.0) {
        throw InvalidArgument("trajectory must span at least five drive periods");
    }
    std::size_t const n = t.positions.size();
    double const w = drive.angular_frequency();
    Eigen::MatrixXd design(n, 4);
    Eigen::VectorXd s(n);
    for (std::size_t i = 0; i < n; ++i) {
        double const ti = t.dt_s * static_cast<double>(i);
        auto const row = static_cast<Eigen::Index>(i);
        design(row, 0) = 1.0;
        design(row, 1) = ti;
        design(row, 2) = std::cos(w * ti);
        design(row, 3) = std::sin(w * ti);
        s(row) = dot(t.positions[i] - t.positions.front(), drive.direction);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < 4) throw InvalidArgument("drive frequency aliases with the frame rate");
    Eigen::VectorXd const coef = qr.solve(s);
    double const a = coef(2);
    double const b = coef(3);
    double const amplitude = std::hypot(a, b);

    double const rss = (design * coef - s).squaredNorm();
    double const dof = static_cast<double>(n) - 4.0;
    Eigen::Matrix4d const cov = (design.transpose() * design).inverse() * (rss / dof);
    double stderr_amp = 0.0;
    if (amplitude > 0.0) {
        double const var = (a * a * cov(2, 2) + b * b * cov(3, 3) + 2.0 * a * b * cov(2, 3)) / (amplitude * amplitude);
        stderr_amp = std::sqrt(std::max(0.0, var));
    }

    DrivenEstimate out;
    out.amplitude_m = amplitude;
    out.amplitude_stderr_m = stderr_amp;
    out.reliable = amplitude > 3.0 * stderr_amp && amplitude > 0.0;
    out.viscosity_mPas = amplitude > 0.0 ? drive.amplitude_N / (6.0 * kPi * radius_m * w * amplitude) / kMilliPascalSecond
                                         : std::numeric_limits<double>::infinity();
    return out;
}

void CountingWindow::validate(double box_edge_m) const {
    if (!(lower_m < upper_m)) throw InvalidArgument("counting window needs lower < upper");
    if (!(lower_m > 0.0 && upper_m < box_edge_m)) {
        throw InvalidArgument("counting window must lie strictly inside the box");
    }
    if (!(sample_period_s > 0.0)) throw InvalidArgument("sample period must be positive");
}

double stay_probability(double diffusion_m2s, double window_width_m, double tau_s, VarianceConvention convention) {
    if (!(diffusion_m2s > 0.0) || !(window_width_m > 0.0) || !(tau_s > 0.0)) {
        throw InvalidArgument("stay_probability needs positive D, width and tau");
    }
    double const sigma = std::sqrt(coordinate_variance_rate(diffusion_m2s, convention) * tau_s);
    double const w = window_width_m;
    // integrand is symmetric about w/2; split off the boundary layer of width ~sigma
    auto kernel = [&](double x) {
        return standard_normal_cdf((w - x) / sigma) - standard_normal_cdf(-x / sigma);
    };
    using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
    double const half = 0.5 * w;
    double const layer = std::min(8.0 * sigma, half);
    double total = Quad::integrate(kernel, 0.0, layer, 15, 1e-12);
    if (layer < half) total += Quad::integrate(kernel, layer, half, 15, 1e-12);
    return std::clamp(2.0 * total / w, 0.0, 1.0);
}

std::vector<CountSnapshot> count_in_window(std::vector<Trajectory> const& particles, CountingWindow const& window,
                                           double box_edge_m) {
    window.validate(box_edge_m);
    if (particles.empty()) throw InvalidArgument("no particles to count");
    double const dt = particles.front().dt_s;
    std::size_t const frames = particles.front().positions.size();
    for (auto const& p : particles) {
        if (p.dt_s != dt || p.positions.size() != frames) {
            throw InvalidArgument("particle trajectories must share dt and length");
        }
    }
    double const ratio = window.sample_period_s / dt;
    auto const stride = static_cast<std::size_t>(std::llround(ratio));
    if (stride < 1 || std::abs(ratio - static_cast<double>(stride)) > 1e-9 * ratio) {
        throw InvalidArgument("sample period must be a whole number of frames");
    }
    auto coordinate = [&](Vec3 const& v) {
        Vec3 const w = wrap_into_box(v, box_edge_m);
        switch (window.axis) {
            case Axis::x:
                return w.x;
            case Axis::y:
                return w.y;
            case Axis::z:
                break;
        }
        return w.z;
    };
    std::vector<CountSnapshot> out;
    for (std::size_t f = 0; f < frames; f += stride) {
        CountSnapshot snap;
        snap.t_s = dt * static_cast<double>(f);
        for (std::size_t i = 0; i < particles.size(); ++i) {
            double const c = coordinate(particles[i].positions[f]);
            if (c >= window.lower_m && c < window.upper_m) snap.inside.push_back(i);
        }
        out.push_back(std::move(snap));
    }
    return out;
}

double observed_stay_fraction(std::vector<CountSnapshot> const& snapshots) {
    if (snapshots.size() < 2) throw InvalidArgument("need at least two count snapshots");
    std::size_t present = 0;
    std::size_t stayed = 0;
    std::vector<std::size_t> common;
    for (std::size_t k = 0; k + 1 < snapshots.size(); ++k) {
        auto const& a = snapshots[k].inside;
        auto const& b = snapshots[k + 1].inside;
        common.clear();
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        present += a.size();
        stayed += common.size();
    }
    if (present == 0) throw InvalidArgument("window never contained a particle");
    return static_cast<double>(stayed) / static_cast<double>(present);
}

double estimate_diffusion_from_counts(std::vector<CountSnapshot> const& snapshots, CountingWindow const& window,
                                      VarianceConvention convention) {
    if (snapshots.size() < 2) throw InvalidArgument("need at least two count snapshots");
    double const tau = window.sample_period_s;
    for (std::size_t k = 0; k + 1 < snapshots.size(); ++k) {
        double const gap = snapshots[k + 1].t_s - snapshots[k].t_s;
        if (std::abs(gap - tau) > 1e-9 * tau) throw InvalidArgument("snapshots are not spaced by the sample period");
    }
    double const observed = observed_stay_fraction(snapshots);
    double const w = window.width();
    auto stay = [&](double log_d) { return stay_probability(std::exp(log_d), w, tau, convention); };

    double lo = std::log(kCountingMinDiffusion);
    double hi = std::log(kCountingMaxDiffusion);
    double const p_lo = stay(lo);  // slowest diffusion, largest stay fraction
    double const p_hi = stay(hi);
    if (!(observed < p_lo && observed > p_hi)) {
        std::ostringstream msg;
        msg << "observed stay fraction " << observed << " outside achievable range (" << p_hi << ", " << p_lo
            << ") for D in [" << kCountingMinDiffusion << ", " << kCountingMaxDiffusion << "] m^2/s";
        throw NoRootError(msg.str());
    }
    double const tol = std::log1p(1e-3);
    while (hi - lo > tol) {
        double const mid = 0.5 * (lo + hi);
        if (stay(mid) > observed) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::exp(0.5 * (lo + hi));
}

}  // namespace cytovisc

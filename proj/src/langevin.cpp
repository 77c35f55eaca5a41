#include "cytovisc/langevin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cytovisc/errors.hpp"
#include "cytovisc/parallel.hpp"
#include "cytovisc/rng.hpp"

namespace cytovisc {
namespace {

constexpr int kMaxBounces = 8;
constexpr int kMaxHalvings = 24;
constexpr double kUnitTolerance = 1e-9;

void require_unit(Vec3 const& v, char const* what) {
    if (std::abs(norm(v) - 1.0) > kUnitTolerance) {
        throw InvalidArgument(std::string(what) + " must be a unit vector");
    }
}

Vec3 nearest_image(Vec3 const& center, Vec3 const& reference, double edge) noexcept {
    Vec3 d = reference - center;
    return center + Vec3{edge * std::round(d.x / edge), edge * std::round(d.y / edge), edge * std::round(d.z / edge)};
}

double periodic_distance2(Vec3 const& a, Vec3 const& b, double edge) noexcept {
    return norm2(a - nearest_image(b, a, edge));
}

/// Point where a segment first touches a reflecting surface, with the outward
/// surface normal there.
struct Contact {
    double s = 0.0;
    Vec3 point;
    Vec3 normal;
};

std::optional<Contact> sphere_entry(Vec3 const& start, Vec3 const& end, Vec3 const& center, double radius) noexcept {
    Vec3 const d = end - start;
    Vec3 const m = start - center;
    double const a = norm2(d);
    if (a == 0.0) return std::nullopt;
    double const b = dot(d, m);
    double const c0 = norm2(m) - radius * radius;
    if (b >= 0.0) return std::nullopt;  // moving away from (or tangent to) the centre
    double s = 0.0;
    if (c0 > 0.0) {
        double const disc = b * b - a * c0;
        if (disc < 0.0) return std::nullopt;
        s = (-b - std::sqrt(disc)) / a;
        if (s > 1.0) return std::nullopt;
    }
    Vec3 const radial = m + s * d;
    double const r = norm(radial);
    if (r == 0.0) return std::nullopt;
    Vec3 const n = radial * (1.0 / r);
    return Contact{s, center + n * radius, n};
}

std::optional<Contact> wall_entry(Vec3 const& start, Vec3 const& end, HalfSpace const& wall) noexcept {
    double const e = dot(wall.normal, end) - wall.offset_m;
    if (e >= 0.0) return std::nullopt;
    double const b = dot(wall.normal, start) - wall.offset_m;
    double const dn = e - b;
    double s = dn < 0.0 ? std::clamp(-b / dn, 0.0, 1.0) : 0.0;
    Vec3 const p = start + s * (end - start);
    // snap onto the plane
    return Contact{s, p - (dot(wall.normal, p) - wall.offset_m) * wall.normal, wall.normal};
}

Vec3 mirror(Vec3 const& p, Contact const& c) noexcept { return p - 2.0 * dot(p - c.point, c.normal) * c.normal; }

class Mover {
  public:
    explicit Mover(Geometry const& g) : geometry_(g) {}

    void advance(Vec3& pos, Vec3 const& delta, int depth = 0) const {
        Vec3 start = pos;
        Vec3 end = pos + delta;
        for (int bounce = 0; bounce <= kMaxBounces; ++bounce) {
            auto contact = earliest_contact(start, end);
            if (!contact) {
                pos = end;
                return;
            }
            if (bounce == kMaxBounces) break;
            end = mirror(end, *contact);
            start = contact->point;
        }
        if (depth >= kMaxHalvings) throw InvalidState("boundary resolution did not converge");
        advance(pos, delta * 0.5, depth + 1);
        advance(pos, delta * 0.5, depth + 1);
    }

  private:
    std::optional<Contact> earliest_contact(Vec3 const& start, Vec3 const& end) const {
        if (auto const* wall = std::get_if<HalfSpace>(&geometry_)) return wall_entry(start, end, *wall);
        auto const* box = std::get_if<PeriodicBox>(&geometry_);
        if (!box) return std::nullopt;
        std::optional<Contact> best;
        for (auto const& o : box->obstacles) {
            Vec3 const c = nearest_image(o.center, start, box->edge_m);
            auto hit = sphere_entry(start, end, c, o.radius_m);
            // earliest wins; ties go to the first obstacle in list order
            if (hit && (!best || hit->s < best->s)) best = hit;
        }
        return best;
    }

    Geometry const& geometry_;
};

}  // namespace

void DriveSpec::validate() const {
    if (!(amplitude_N >= 0.0)) throw InvalidArgument("drive amplitude must be non-negative");
    if (!(frequency_Hz > 0.0)) throw InvalidArgument("drive frequency must be positive");
    require_unit(direction, "drive direction");
}

Vec3 DriveSpec::force(double t) const noexcept {
    return direction * (amplitude_N * std::sin(angular_frequency() * t + phase_rad));
}

Vec3 DriveSpec::impulse(double t0, double t1) const noexcept {
    double const w = angular_frequency();
    // cos(a) - cos(b) = 2 sin((a+b)/2) sin((b-a)/2)
    double const mid = 0.5 * w * (t0 + t1) + phase_rad;
    double const half = 0.5 * w * (t1 - t0);
    return direction * (amplitude_N / w * 2.0 * std::sin(mid) * std::sin(half));
}

void validate_geometry(Geometry const& g) {
    if (auto const* wall = std::get_if<HalfSpace>(&g)) {
        require_unit(wall->normal, "wall normal");
        return;
    }
    auto const* box = std::get_if<PeriodicBox>(&g);
    if (!box) return;
    double const edge = box->edge_m;
    if (!(edge > 0.0)) throw InvalidArgument("box edge must be positive");
    auto const& obs = box->obstacles;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        auto const& o = obs[i];
        if (!(o.radius_m > 0.0)) throw InvalidArgument("obstacle radius must be positive");
        if (o.radius_m >= 0.25 * edge) throw InvalidArgument("obstacle radius must be below a quarter of the box edge");
        for (double c : {o.center.x, o.center.y, o.center.z}) {
            if (c < 0.0 || c >= edge) throw InvalidArgument("obstacle centre outside the box");
        }
        for (std::size_t j = 0; j < i; ++j) {
            double const reach = o.radius_m + obs[j].radius_m;
            if (periodic_distance2(o.center, obs[j].center, edge) < reach * reach) {
                throw InvalidArgument("obstacles " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
            }
        }
    }
}

Vec3 wrap_into_box(Vec3 p, double edge_m) noexcept {
    auto wrap = [edge_m](double v) {
        double w = v - edge_m * std::floor(v / edge_m);
        return w >= edge_m ? 0.0 : w;
    };
    return {wrap(p.x), wrap(p.y), wrap(p.z)};
}

std::vector<Obstacle> place_obstacles(double edge_m, double radius_m, double volume_fraction, std::uint64_t seed) {
    if (!(edge_m > 0.0) || !(radius_m > 0.0)) throw InvalidArgument("edge and radius must be positive");
    if (!(volume_fraction >= 0.0 && volume_fraction < 0.38)) {
        throw InvalidArgument("volume fraction must lie in [0, 0.38) for random sequential placement");
    }
    double const sphere_volume = 4.0 / 3.0 * kPi * radius_m * radius_m * radius_m;
    auto const target = static_cast<std::size_t>(std::llround(volume_fraction * edge_m * edge_m * edge_m / sphere_volume));
    std::vector<Obstacle> out;
    out.reserve(target);
    RandomStream rng(seed);
    std::size_t const budget = 2000 * (target + 1);
    for (std::size_t attempt = 0; out.size() < target; ++attempt) {
        if (attempt >= budget) {
            throw InvalidArgument("could not place " + std::to_string(target) + " obstacles (placed " +
                                  std::to_string(out.size()) + ")");
        }
        Vec3 c{edge_m * rng.uniform(), edge_m * rng.uniform(), edge_m * rng.uniform()};
        bool const clear = std::none_of(out.begin(), out.end(), [&](Obstacle const& o) {
            return periodic_distance2(c, o.center, edge_m) < 4.0 * radius_m * radius_m;
        });
        if (clear) out.push_back({c, radius_m});
    }
    return out;
}

void LangevinRun::validate() const {
    params.validate();
    acq.validate();
    if (drive) drive->validate();
    validate_geometry(geometry);
    if (particle_count < 1) throw InvalidArgument("particle_count must be at least 1");
    if (substeps_per_frame < 1) throw InvalidArgument("substeps_per_frame must be at least 1");
    if (!initial_positions.empty() && initial_positions.size() != particle_count) {
        throw InvalidArgument("initial_positions must list one position per particle");
    }
}

std::vector<Vec3> resolve_initial_positions(LangevinRun const& run) {
    std::vector<Vec3> out = run.initial_positions;
    auto const* box = std::get_if<PeriodicBox>(&run.geometry);
    if (out.empty()) {
        if (box) {
            RandomStream rng(derive_seed(run.acq.master_seed, run.trial_index, kLayoutStream));
            out.reserve(run.particle_count);
            while (out.size() < run.particle_count) {
                double const e = box->edge_m;
                Vec3 p{e * rng.uniform(), e * rng.uniform(), e * rng.uniform()};
                bool const free = std::none_of(box->obstacles.begin(), box->obstacles.end(), [&](Obstacle const& o) {
                    return periodic_distance2(p, o.center, e) < o.radius_m * o.radius_m;
                });
                if (free) out.push_back(p);
            }
        } else {
            out.assign(run.particle_count, Vec3{});
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (auto const* wall = std::get_if<HalfSpace>(&run.geometry)) {
            if (dot(wall->normal, out[i]) < wall->offset_m) {
                throw InvalidArgument("particle " + std::to_string(i) + " starts behind the wall");
            }
        }
        if (box) {
            for (auto const& o : box->obstacles) {
                if (periodic_distance2(out[i], o.center, box->edge_m) < o.radius_m * o.radius_m) {
                    throw InvalidArgument("particle " + std::to_string(i) + " starts inside an obstacle");
                }
            }
        }
    }
    return out;
}

std::vector<Trajectory> simulate_langevin(LangevinRun const& run) {
    run.validate();
    std::vector<Vec3> const starts = resolve_initial_positions(run);
    std::size_t const frames = run.acq.frame_count();
    double const frame_dt = run.acq.frame_interval_s();
    double const h = frame_dt / static_cast<double>(run.substeps_per_frame);
    double const gamma = drag_coefficient(run.params.particle_radius_m, run.params.viscosity_mPas);
    double const sigma =
        run.thermal_noise ? std::sqrt(coordinate_variance_rate(einstein_diffusion(run.params), run.convention) * h)
                          : 0.0;
    bool const driven = run.drive && run.drive->amplitude_N > 0.0;
    Mover const mover(run.geometry);

    std::vector<Trajectory> out(run.particle_count);
    parallel_for(run.particle_count, [&](std::size_t p) {
        RandomStream rng(derive_seed(run.acq.master_seed, run.trial_index, p));
        Trajectory& traj = out[p];
        traj.dt_s = frame_dt;
        traj.positions.reserve(frames + 1);
        Vec3 pos = starts[p];
        traj.positions.push_back(pos);
        std::size_t tick = 0;
        for (std::size_t f = 0; f < frames; ++f) {
            for (std::size_t s = 0; s < run.substeps_per_frame; ++s, ++tick) {
                Vec3 delta;
                if (driven) {
                    double const t0 = static_cast<double>(tick) * h;
                    delta = run.drive->impulse(t0, t0 + h) * (1.0 / gamma);
                }
                if (run.thermal_noise) {
                    delta.x += sigma * rng.normal();
                    delta.y += sigma * rng.normal();
                    delta.z += sigma * rng.normal();
                }
                mover.advance(pos, delta);
            }
            traj.positions.push_back(pos);
        }
    });
    return out;
}

Vec3 reflect_plane(Vec3 pos, Vec3 normal, double offset_m) noexcept {
    double const signed_distance = dot(normal, pos) - offset_m;
    if (signed_distance >= 0.0) return pos;
    return pos - 2.0 * signed_distance * normal;
}

Vec3 reflect_sphere(Vec3 pos_before, Vec3 pos_after, Obstacle const& obstacle) {
    double const r2 = obstacle.radius_m * obstacle.radius_m;
    if (norm2(pos_before - obstacle.center) < r2 * (1.0 - 1e-12)) {
        throw InvalidState("step starts inside an obstacle");
    }
    if (norm2(pos_after - obstacle.center) >= r2) return pos_after;
    auto contact = sphere_entry(pos_before, pos_after, obstacle.center, obstacle.radius_m);
    if (!contact) return pos_after;
    return mirror(pos_after, *contact);
}

}  // namespace cytovisc

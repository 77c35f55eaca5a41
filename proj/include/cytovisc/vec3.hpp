#pragma once

#include <cmath>

namespace cytovisc {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3& operator+=(Vec3 const& o) noexcept {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Vec3& operator-=(Vec3 const& o) noexcept {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Vec3& operator*=(double s) noexcept {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    friend constexpr Vec3 operator+(Vec3 a, Vec3 const& b) noexcept { return a += b; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 const& b) noexcept { return a -= b; }
    friend constexpr Vec3 operator*(Vec3 a, double s) noexcept { return a *= s; }
    friend constexpr Vec3 operator*(double s, Vec3 a) noexcept { return a *= s; }
    friend constexpr Vec3 operator-(Vec3 const& a) noexcept { return {-a.x, -a.y, -a.z}; }
    friend constexpr bool operator==(Vec3 const&, Vec3 const&) = default;
};

constexpr double dot(Vec3 const& a, Vec3 const& b) noexcept { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr double norm2(Vec3 const& a) noexcept { return dot(a, a); }
inline double norm(Vec3 const& a) noexcept { return std::sqrt(norm2(a)); }

/// Planar point in the x-z observation plane.
struct Vec2 {
    double x = 0.0;
    double z = 0.0;
    friend constexpr bool operator==(Vec2 const&, Vec2 const&) = default;
};

constexpr double norm2(Vec2 const& a) noexcept { return a.x * a.x + a.z * a.z; }

}  // namespace cytovisc

#pragma once

#include <cmath>

namespace maghardy {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

// A location in R^3 carrying both charts. theta is the polar angle measured
// from the +z axis, phi the azimuth; r >= 0, theta in [0, pi].
struct Point3 {
  double x = 0.0, y = 0.0, z = 0.0;
  double r = 0.0, theta = 0.0, phi = 0.0;

  static Point3 cartesian(double x, double y, double z) {
    Point3 p;
    p.x = x; p.y = y; p.z = z;
    p.r = std::sqrt(x * x + y * y + z * z);
    double rho = std::sqrt(x * x + y * y);
    p.theta = (p.r == 0.0) ? 0.0 : std::atan2(rho, z);
    p.phi = (rho == 0.0) ? 0.0 : std::atan2(y, x);
    return p;
  }

  static Point3 spherical(double r, double theta, double phi) {
    Point3 p;
    p.r = r; p.theta = theta; p.phi = phi;
    double s = std::sin(theta);
    p.x = r * s * std::cos(phi);
    p.y = r * s * std::sin(phi);
    p.z = r * std::cos(theta);
    return p;
  }

  Vec3 vec() const { return {x, y, z}; }
  bool on_axis(double tol = 1e-300) const { return x * x + y * y <= tol * (1.0 + r * r); }
};

// Local orthonormal frame. e_theta points toward increasing polar angle
// (away from +z), e_phi counterclockwise as seen from +z.
inline Vec3 unit_r(const Point3& p) {
  double s = std::sin(p.theta);
  return {s * std::cos(p.phi), s * std::sin(p.phi), std::cos(p.theta)};
}
inline Vec3 unit_theta(const Point3& p) {
  double c = std::cos(p.theta);
  return {c * std::cos(p.phi), c * std::sin(p.phi), -std::sin(p.theta)};
}
inline Vec3 unit_phi(const Point3& p) {
  return {-std::sin(p.phi), std::cos(p.phi), 0.0};
}

}  // namespace maghardy

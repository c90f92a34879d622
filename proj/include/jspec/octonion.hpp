#pragma once

// Quaternions and octonions over double.
//
// Quaternions use the standard table i*j = k, j*k = i, k*i = j.
// Octonions are pairs of quaternions (a, b) with the Cayley-Dickson product
//     (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))
// and basis e0..e7 = (1,0), (i,0), (j,0), (k,0), (0,1), (0,i), (0,j), (0,k).
// R, C and H sit inside as the first 1, 2 and 4 components.

#include <array>
#include <cmath>
#include <cstddef>

namespace jspec {

struct Quaternion {
  double w = 0, x = 0, y = 0, z = 0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }

  friend constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend constexpr Quaternion operator*(double s, const Quaternion& a) {
    return {s * a.w, s * a.x, s * a.y, s * a.z};
  }
  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

class Octonion {
 public:
  static constexpr std::size_t kSize = 8;

  constexpr Octonion() = default;
  constexpr explicit Octonion(double re) { c_[0] = re; }
  constexpr explicit Octonion(const std::array<double, 8>& c) : c_(c) {}
  constexpr Octonion(const Quaternion& a, const Quaternion& b)
      : c_{a.w, a.x, a.y, a.z, b.w, b.x, b.y, b.z} {}

  /// Unit e_k, k in [0, 8).
  static constexpr Octonion unit(std::size_t k) {
    Octonion o;
    o.c_[k] = 1.0;
    return o;
  }

  constexpr double operator[](std::size_t k) const { return c_[k]; }
  constexpr double& operator[](std::size_t k) { return c_[k]; }
  constexpr const std::array<double, 8>& components() const { return c_; }

  constexpr double re() const { return c_[0]; }
  constexpr Quaternion lo() const { return {c_[0], c_[1], c_[2], c_[3]}; }
  constexpr Quaternion hi() const { return {c_[4], c_[5], c_[6], c_[7]}; }

  constexpr Octonion conj() const {
    Octonion o;
    o.c_[0] = c_[0];
    for (std::size_t k = 1; k < 8; ++k) o.c_[k] = -c_[k];
    return o;
  }

  constexpr double norm2() const {
    double s = 0;
    for (double v : c_) s += v * v;
    return s;
  }

  Octonion& operator+=(const Octonion& o) {
    for (std::size_t k = 0; k < 8; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Octonion& operator-=(const Octonion& o) {
    for (std::size_t k = 0; k < 8; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Octonion& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }

  friend Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
  friend Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
  friend Octonion operator*(double s, Octonion a) { return a *= s; }

  friend constexpr Octonion operator*(const Octonion& p, const Octonion& q) {
    const Quaternion a = p.lo(), b = p.hi(), c = q.lo(), d = q.hi();
    return {a * c - d.conj() * b, d * a + b * c.conj()};
  }

  friend constexpr bool operator==(const Octonion&, const Octonion&) = default;

 private:
  std::array<double, 8> c_{};
};

/// Real part of p * conj(q); the Euclidean inner product on components.
inline double real_inner(const Octonion& p, const Octonion& q) {
  double s = 0;
  for (std::size_t k = 0; k < 8; ++k) s += p[k] * q[k];
  return s;
}

}  // namespace jspec

#pragma once

#include <cmath>
#include <complex>
#include <ostream>

namespace qtc {

//! Quaternion scalar w + x*i + y*j + z*k.
//!
//! The imaginary units anticommute (i*j = -j*i = k), so multiplication is
//! associative and distributive but not commutative. Color pixels are encoded
//! as pure quaternions (w = 0) with RGB on the three imaginary parts.
template <typename Scalar>
struct Quaternion {
  Scalar w{0}, x{0}, y{0}, z{0};

  using Complex = std::complex<Scalar>;

  constexpr Quaternion() = default;
  constexpr Quaternion(Scalar w_, Scalar x_, Scalar y_, Scalar z_) : w(w_), x(x_), y(y_), z(z_) {}

  //! Cayley-Dickson composition: value = p + q*j with p = w + x*i, q = y + z*i.
  static Quaternion fromParts(Complex p, Complex q) {
    return {p.real(), p.imag(), q.real(), q.imag()};
  }
  Complex p() const { return {w, x}; }
  Complex q() const { return {y, z}; }

  static constexpr Quaternion zero() { return {}; }
  static constexpr Quaternion one() { return {1, 0, 0, 0}; }
  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  constexpr Quaternion conjugate() const { return {w, -x, -y, -z}; }
  constexpr Scalar real() const { return w; }
  constexpr bool isPure() const { return w == Scalar(0); }

  Scalar squaredNorm() const { return w * w + x * x + y * y + z * z; }
  Scalar norm() const { return std::sqrt(squaredNorm()); }

  //! Multiplicative inverse; undefined for the zero quaternion.
  Quaternion inverse() const {
    const Scalar s = squaredNorm();
    return {w / s, -x / s, -y / s, -z / s};
  }

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  constexpr Quaternion& operator+=(const Quaternion& r) {
    w += r.w; x += r.x; y += r.y; z += r.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& r) {
    w -= r.w; x -= r.x; y -= r.y; z -= r.z;
    return *this;
  }
  constexpr Quaternion& operator*=(Scalar s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
  friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend constexpr Quaternion operator*(Quaternion a, Scalar s) { return a *= s; }
  friend constexpr Quaternion operator*(Scalar s, Quaternion a) { return a *= s; }
  friend constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

//! Hamilton product in component form.
template <typename Scalar>
constexpr Quaternion<Scalar> qmul(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

template <typename Scalar>
constexpr Quaternion<Scalar> operator*(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) {
  return qmul(p, q);
}

//! Modulus shrinkage: 0 if |q| <= tau, otherwise (|q| - tau) * q / |q|.
//! Direction is preserved; this is the l1 proximal map in the quaternion domain.
template <typename Scalar>
Quaternion<Scalar> q_soft_threshold(const Quaternion<Scalar>& q, Scalar tau) {
  const Scalar m = q.norm();
  if (m <= tau) return Quaternion<Scalar>::zero();
  return q * ((m - tau) / m);
}

template <typename Scalar>
std::ostream& operator<<(std::ostream& os, const Quaternion<Scalar>& q) {
  return os << "(" << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ")";
}

using Quaterniond = Quaternion<double>;

}  // namespace qtc

#pragma once

#include <random>

#include <Eigen/Dense>

#include "qtc/errors.hpp"
#include "qtc/quaternion.hpp"
#include "qtc/rng.hpp"

namespace qtc {

using Index = Eigen::Index;

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

//! Dense quaternion matrix in Cayley-Dickson storage.
//!
//! Entry (i, j) is p(i, j) + q(i, j)*j with complex parts p = W + X*i and
//! q = Y + Z*i. Products, adjoints, and norms reduce to complex arithmetic on
//! the two parts; the isomorphic 2Mx2N complex adjoint is exposed through
//! complex_adjoint() for decompositions.
template <typename Scalar>
class QuaternionMatrix {
 public:
  using Complex = std::complex<Scalar>;
  using Parts = ComplexMatrix<Scalar>;

  QuaternionMatrix() = default;
  QuaternionMatrix(Index rows, Index cols)
      : p_(Parts::Zero(rows, cols)), q_(Parts::Zero(rows, cols)) {}
  QuaternionMatrix(Parts p, Parts q) : p_(std::move(p)), q_(std::move(q)) {
    if (p_.rows() != q_.rows() || p_.cols() != q_.cols())
      throw DimensionMismatch("QuaternionMatrix: Cayley-Dickson parts differ in shape");
  }

  static QuaternionMatrix Zero(Index rows, Index cols) { return {rows, cols}; }

  static QuaternionMatrix Identity(Index n) {
    QuaternionMatrix m(n, n);
    m.p_.setIdentity();
    return m;
  }

  //! Entries with all four components uniform in [-1, 1).
  static QuaternionMatrix Random(Index rows, Index cols, std::mt19937_64& rng) {
    QuaternionMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) {
        m.p_(i, j) = Complex(uniform_symmetric(rng), uniform_symmetric(rng));
        m.q_(i, j) = Complex(uniform_symmetric(rng), uniform_symmetric(rng));
      }
    return m;
  }

  Index rows() const { return p_.rows(); }
  Index cols() const { return p_.cols(); }
  Index size() const { return p_.size(); }

  const Parts& p() const { return p_; }
  const Parts& q() const { return q_; }
  Parts& p() { return p_; }
  Parts& q() { return q_; }

  Quaternion<Scalar> operator()(Index i, Index j) const {
    return Quaternion<Scalar>::fromParts(p_(i, j), q_(i, j));
  }
  void set(Index i, Index j, const Quaternion<Scalar>& v) {
    p_(i, j) = v.p();
    q_(i, j) = v.q();
  }

  void setZero() {
    p_.setZero();
    q_.setZero();
  }

  //! Conjugate transpose: (Q^H)_p = Q_p^H, (Q^H)_q = -Q_q^T.
  QuaternionMatrix adjoint() const { return {p_.adjoint(), (-q_).transpose()}; }

  QuaternionMatrix block(Index i, Index j, Index rows, Index cols) const {
    return {p_.block(i, j, rows, cols), q_.block(i, j, rows, cols)};
  }
  QuaternionMatrix leftCols(Index n) const { return {p_.leftCols(n), q_.leftCols(n)}; }

  Scalar squaredNorm() const { return p_.squaredNorm() + q_.squaredNorm(); }
  Scalar norm() const { return std::sqrt(squaredNorm()); }

  //! Entrywise l1 norm: sum of quaternion moduli.
  Scalar l1Norm() const {
    return (p_.array().abs2() + q_.array().abs2()).sqrt().sum();
  }

  Quaternion<Scalar> trace() const {
    return Quaternion<Scalar>::fromParts(p_.trace(), q_.trace());
  }

  QuaternionMatrix& operator+=(const QuaternionMatrix& r) {
    p_ += r.p_;
    q_ += r.q_;
    return *this;
  }
  QuaternionMatrix& operator-=(const QuaternionMatrix& r) {
    p_ -= r.p_;
    q_ -= r.q_;
    return *this;
  }
  QuaternionMatrix& operator*=(Scalar s) {
    p_ *= s;
    q_ *= s;
    return *this;
  }
  friend QuaternionMatrix operator+(QuaternionMatrix a, const QuaternionMatrix& b) { return a += b; }
  friend QuaternionMatrix operator-(QuaternionMatrix a, const QuaternionMatrix& b) { return a -= b; }
  friend QuaternionMatrix operator*(QuaternionMatrix a, Scalar s) { return a *= s; }
  friend QuaternionMatrix operator*(Scalar s, QuaternionMatrix a) { return a *= s; }

  //! Quaternion matrix product via four complex GEMMs.
  friend QuaternionMatrix operator*(const QuaternionMatrix& a, const QuaternionMatrix& b) {
    if (a.cols() != b.rows())
      throw DimensionMismatch("QuaternionMatrix: product inner dimensions differ");
    return {a.p_ * b.p_ - a.q_ * b.q_.conjugate(), a.p_ * b.q_ + a.q_ * b.p_.conjugate()};
  }

  //! Left multiplication of every entry by the quaternion scalar u.
  QuaternionMatrix leftScaled(const Quaternion<Scalar>& u) const {
    const Complex up = u.p(), uq = u.q();
    return {up * p_ - uq * q_.conjugate(), up * q_ + uq * p_.conjugate()};
  }

  //! Right multiplication of every entry by the quaternion scalar u.
  QuaternionMatrix rightScaled(const Quaternion<Scalar>& u) const {
    const Complex up = u.p(), uq = u.q();
    return {p_ * up - q_ * std::conj(uq), p_ * uq + q_ * std::conj(up)};
  }

 private:
  Parts p_, q_;
};

//! Isomorphic complex representation [[Q_p, Q_q], [-conj(Q_q), conj(Q_p)]].
//! It is a *-algebra homomorphism: products, adjoints, and (doubled) norms of
//! quaternion matrices map to their complex counterparts.
template <typename Scalar>
ComplexMatrix<Scalar> complex_adjoint(const QuaternionMatrix<Scalar>& m) {
  const Index r = m.rows(), c = m.cols();
  ComplexMatrix<Scalar> out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = m.p();
  out.topRightCorner(r, c) = m.q();
  out.bottomLeftCorner(r, c) = -m.q().conjugate();
  out.bottomRightCorner(r, c) = m.p().conjugate();
  return out;
}

using QuaternionMatrixd = QuaternionMatrix<double>;

}  // namespace qtc

#pragma once

#include <array>
#include <random>
#include <vector>

#include "qtc/quaternion_matrix.hpp"

namespace qtc {

//! Third-order quaternion tensor, stored as I3 frontal slices of size I1 x I2.
//!
//! Frontal-slice-major storage keeps slice extraction contiguous; the per-slice
//! SVDs dominate every downstream algorithm. Entry (i1, i2, i3) lives in
//! slice(i3) at (i1, i2).
template <typename Scalar>
class QuaternionTensor {
 public:
  using Slice = QuaternionMatrix<Scalar>;

  QuaternionTensor() = default;
  QuaternionTensor(Index i1, Index i2, Index i3)
      : dims_{i1, i2, i3}, slices_(static_cast<std::size_t>(i3), Slice(i1, i2)) {}

  static QuaternionTensor Zero(Index i1, Index i2, Index i3) { return {i1, i2, i3}; }

  static QuaternionTensor Random(Index i1, Index i2, Index i3, std::mt19937_64& rng) {
    QuaternionTensor t(i1, i2, i3);
    for (Index k = 0; k < i3; ++k) t.slice(k) = Slice::Random(i1, i2, rng);
    return t;
  }

  Index dim(int k) const { return dims_[static_cast<std::size_t>(k)]; }
  Index rows() const { return dims_[0]; }
  Index cols() const { return dims_[1]; }
  Index depth() const { return dims_[2]; }
  Index size() const { return dims_[0] * dims_[1] * dims_[2]; }

  const Slice& slice(Index k) const { return slices_[static_cast<std::size_t>(k)]; }
  Slice& slice(Index k) { return slices_[static_cast<std::size_t>(k)]; }

  Quaternion<Scalar> operator()(Index i1, Index i2, Index i3) const {
    return slice(i3)(i1, i2);
  }
  void set(Index i1, Index i2, Index i3, const Quaternion<Scalar>& v) {
    slice(i3).set(i1, i2, v);
  }

  bool sameShape(const QuaternionTensor& o) const { return dims_ == o.dims_; }

  Scalar squaredNorm() const {
    Scalar s = 0;
    for (const auto& f : slices_) s += f.squaredNorm();
    return s;
  }
  Scalar norm() const { return std::sqrt(squaredNorm()); }

  Scalar l1Norm() const {
    Scalar s = 0;
    for (const auto& f : slices_) s += f.l1Norm();
    return s;
  }

  //! Slice-wise conjugate transpose (I2 x I1 x I3). For the real mode-3
  //! transforms used here this commutes with the transform, so it is the
  //! tensor adjoint of the *QT algebra as well.
  QuaternionTensor adjoint() const {
    QuaternionTensor out(cols(), rows(), depth());
    for (Index k = 0; k < depth(); ++k) out.slice(k) = slice(k).adjoint();
    return out;
  }

  //! First n columns of every frontal slice (I1 x n x I3).
  QuaternionTensor leadingColumns(Index n) const {
    QuaternionTensor out(rows(), n, depth());
    for (Index k = 0; k < depth(); ++k) out.slice(k) = slice(k).leftCols(n);
    return out;
  }

  QuaternionTensor& operator+=(const QuaternionTensor& r) {
    requireSameShape(r);
    for (Index k = 0; k < depth(); ++k) slices_[k] += r.slices_[k];
    return *this;
  }
  QuaternionTensor& operator-=(const QuaternionTensor& r) {
    requireSameShape(r);
    for (Index k = 0; k < depth(); ++k) slices_[k] -= r.slices_[k];
    return *this;
  }
  QuaternionTensor& operator*=(Scalar s) {
    for (auto& f : slices_) f *= s;
    return *this;
  }
  friend QuaternionTensor operator+(QuaternionTensor a, const QuaternionTensor& b) { return a += b; }
  friend QuaternionTensor operator-(QuaternionTensor a, const QuaternionTensor& b) { return a -= b; }
  friend QuaternionTensor operator*(QuaternionTensor a, Scalar s) { return a *= s; }
  friend QuaternionTensor operator*(Scalar s, QuaternionTensor a) { return a *= s; }

 private:
  void requireSameShape(const QuaternionTensor& o) const {
    if (!sameShape(o)) throw DimensionMismatch("QuaternionTensor: shapes differ");
  }

  std::array<Index, 3> dims_{0, 0, 0};
  std::vector<Slice> slices_;
};

//! Frontal-slice-wise product: slice k of the result is A^(k) * B^(k).
template <typename Scalar>
QuaternionTensor<Scalar> facewise_product(const QuaternionTensor<Scalar>& a,
                                          const QuaternionTensor<Scalar>& b) {
  if (a.cols() != b.rows() || a.depth() != b.depth())
    throw DimensionMismatch("facewise_product: incompatible shapes");
  QuaternionTensor<Scalar> out(a.rows(), b.cols(), a.depth());
  for (Index k = 0; k < a.depth(); ++k) out.slice(k) = a.slice(k) * b.slice(k);
  return out;
}

//! Mode-1 product with a real matrix: every slice becomes C * slice.
template <typename Scalar>
QuaternionTensor<Scalar> mode1_product(const QuaternionTensor<Scalar>& t,
                                       const Eigen::MatrixX<Scalar>& c) {
  if (c.cols() != t.rows()) throw DimensionMismatch("mode1_product: size mismatch");
  QuaternionTensor<Scalar> out(c.rows(), t.cols(), t.depth());
  const auto cc = c.template cast<std::complex<Scalar>>().eval();
  for (Index k = 0; k < t.depth(); ++k) {
    out.slice(k).p() = cc * t.slice(k).p();
    out.slice(k).q() = cc * t.slice(k).q();
  }
  return out;
}

//! Mode-2 product with a real matrix: every slice becomes slice * C^T.
template <typename Scalar>
QuaternionTensor<Scalar> mode2_product(const QuaternionTensor<Scalar>& t,
                                       const Eigen::MatrixX<Scalar>& c) {
  if (c.cols() != t.cols()) throw DimensionMismatch("mode2_product: size mismatch");
  QuaternionTensor<Scalar> out(t.rows(), c.rows(), t.depth());
  const auto ct = c.transpose().template cast<std::complex<Scalar>>().eval();
  for (Index k = 0; k < t.depth(); ++k) {
    out.slice(k).p() = t.slice(k).p() * ct;
    out.slice(k).q() = t.slice(k).q() * ct;
  }
  return out;
}

//! Mode-3 product with a real matrix: output slice j = sum_k C(j, k) slice k.
template <typename Scalar>
QuaternionTensor<Scalar> mode3_product(const QuaternionTensor<Scalar>& t,
                                       const Eigen::MatrixX<Scalar>& c) {
  if (c.cols() != t.depth()) throw DimensionMismatch("mode3_product: size mismatch");
  QuaternionTensor<Scalar> out(t.rows(), t.cols(), c.rows());
  for (Index j = 0; j < c.rows(); ++j) {
    auto& f = out.slice(j);
    for (Index k = 0; k < t.depth(); ++k) {
      const Scalar w = c(j, k);
      if (w == Scalar(0)) continue;
      f.p() += w * t.slice(k).p();
      f.q() += w * t.slice(k).q();
    }
  }
  return out;
}

//! Left multiplication of every entry by the quaternion scalar u.
template <typename Scalar>
QuaternionTensor<Scalar> left_scaled(const QuaternionTensor<Scalar>& t,
                                     const Quaternion<Scalar>& u) {
  QuaternionTensor<Scalar> out(t.rows(), t.cols(), t.depth());
  for (Index k = 0; k < t.depth(); ++k) out.slice(k) = t.slice(k).leftScaled(u);
  return out;
}

//! Right multiplication of every entry by the quaternion scalar u.
template <typename Scalar>
QuaternionTensor<Scalar> right_scaled(const QuaternionTensor<Scalar>& t,
                                      const Quaternion<Scalar>& u) {
  QuaternionTensor<Scalar> out(t.rows(), t.cols(), t.depth());
  for (Index k = 0; k < t.depth(); ++k) out.slice(k) = t.slice(k).rightScaled(u);
  return out;
}

using QuaternionTensord = QuaternionTensor<double>;

}  // namespace qtc

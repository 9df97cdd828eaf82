#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "qtc/quaternion_tensor.hpp"

namespace qtc {

//! Orthonormal DCT-II matrix: C(k, n) = s_k cos(pi (n + 1/2) k / n_dim) with
//! s_0 = sqrt(1/n), s_k = sqrt(2/n). Satisfies C * C^T = I exactly in theory.
template <typename Scalar>
Eigen::MatrixX<Scalar> dct_matrix(Index n) {
  Eigen::MatrixX<Scalar> c(n, n);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar s0 = std::sqrt(Scalar(1) / Scalar(n));
  const Scalar sk = std::sqrt(Scalar(2) / Scalar(n));
  for (Index k = 0; k < n; ++k)
    for (Index j = 0; j < n; ++j)
      c(k, j) = (k == 0 ? s0 : sk) * std::cos(pi * (Scalar(j) + Scalar(0.5)) * Scalar(k) / Scalar(n));
  return c;
}

//! Invertible mode-3 transform pair defining the *QT-product, the tensor SVD,
//! and all singular-value prox operators built on it.
template <typename Scalar>
struct TransformSpec {
  Eigen::MatrixX<Scalar> forward;  // Q3
  Eigen::MatrixX<Scalar> inverse;  // Q3^{-1}
  std::string name;

  Index dim() const { return forward.rows(); }

  //! Default transform: orthonormal DCT-II along mode 3. The isometry keeps
  //! Frobenius terms invariant in the transform domain, which the
  //! singular-value thresholding identities rely on.
  static TransformSpec dct(Index n) { return {dct_matrix<Scalar>(n), dct_matrix<Scalar>(n).transpose(), "dct"}; }

  static TransformSpec identity(Index n) {
    return {Eigen::MatrixX<Scalar>::Identity(n, n), Eigen::MatrixX<Scalar>::Identity(n, n), "identity"};
  }

  //! Any invertible real matrix; the inverse is computed and validated.
  static TransformSpec fromMatrix(const Eigen::MatrixX<Scalar>& q3, std::string label = "custom") {
    Eigen::FullPivLU<Eigen::MatrixX<Scalar>> lu(q3);
    if (!lu.isInvertible()) throw DimensionMismatch("TransformSpec: matrix is singular");
    return {q3, lu.inverse(), std::move(label)};
  }
};

enum class TransformDirection { Forward, Inverse };

//! Mode-3 application of the transform (forward: T x3 Q3, inverse: T x3 Q3^{-1}).
template <typename Scalar>
QuaternionTensor<Scalar> mode3_transform(const QuaternionTensor<Scalar>& t,
                                         const TransformSpec<Scalar>& spec,
                                         TransformDirection direction) {
  if (spec.dim() != t.depth())
    throw DimensionMismatch("mode3_transform: transform size differs from I3");
  return mode3_product(t, direction == TransformDirection::Forward ? spec.forward : spec.inverse);
}

//! Transform-domain facewise product: L^{-1}(L(A) *QF L(B)).
template <typename Scalar>
QuaternionTensor<Scalar> qt_product(const QuaternionTensor<Scalar>& a,
                                    const QuaternionTensor<Scalar>& b,
                                    const TransformSpec<Scalar>& spec) {
  if (a.cols() != b.rows() || a.depth() != b.depth())
    throw DimensionMismatch("qt_product: incompatible shapes");
  const auto ah = mode3_transform(a, spec, TransformDirection::Forward);
  const auto bh = mode3_transform(b, spec, TransformDirection::Forward);
  return mode3_transform(facewise_product(ah, bh), spec, TransformDirection::Inverse);
}

//! Identity element of the *QT-product: identity slices in the transform domain.
template <typename Scalar>
QuaternionTensor<Scalar> qt_identity(Index n, Index depth, const TransformSpec<Scalar>& spec) {
  QuaternionTensor<Scalar> id(n, n, depth);
  for (Index k = 0; k < depth; ++k) id.slice(k) = QuaternionMatrix<Scalar>::Identity(n);
  return mode3_transform(id, spec, TransformDirection::Inverse);
}

}  // namespace qtc

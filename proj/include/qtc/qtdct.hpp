#pragma once

#include <vector>

#include "qtc/transform.hpp"

namespace qtc {

//! Context for the quaternion tensor DCT: one orthonormal DCT-II matrix per
//! mode plus the unit pure quaternion axis u (u^2 = -1) applied after the
//! mode products. The default axis (i + j + k)/sqrt(3) treats RGB symmetrically.
template <typename Scalar>
struct QtdctContext {
  Eigen::MatrixX<Scalar> c1, c2, c3;
  Quaternion<Scalar> axis;

  static Quaternion<Scalar> grayAxis() {
    const Scalar s = Scalar(1) / std::sqrt(Scalar(3));
    return {0, s, s, s};
  }

  static QtdctContext forDims(Index i1, Index i2, Index i3,
                              Quaternion<Scalar> axis = grayAxis()) {
    return {dct_matrix<Scalar>(i1), dct_matrix<Scalar>(i2), dct_matrix<Scalar>(i3), axis};
  }

  bool matches(const QuaternionTensor<Scalar>& t) const {
    return c1.rows() == t.rows() && c2.rows() == t.cols() && c3.rows() == t.depth();
  }
};

namespace internal {

template <typename Scalar>
void require_ctx(const QtdctContext<Scalar>& ctx, const QuaternionTensor<Scalar>& t,
                 const char* where) {
  if (!ctx.matches(t)) throw DimensionMismatch(std::string(where) + ": context dims differ");
}

// Multidimensional DCT of both Cayley-Dickson parts at once: the mode matrices
// are real, so they act on the complex parts independently.
template <typename Scalar>
QuaternionTensor<Scalar> mode_products(const QuaternionTensor<Scalar>& t,
                                       const Eigen::MatrixX<Scalar>& c1,
                                       const Eigen::MatrixX<Scalar>& c2,
                                       const Eigen::MatrixX<Scalar>& c3) {
  return mode3_product(mode2_product(mode1_product(t, c1), c2), c3);
}

}  // namespace internal

//! Left-handed quaternion tensor DCT: u * (T x1 C1 x2 C2 x3 C3).
//!
//! The Cayley-Dickson split of the implementation storage makes this exactly
//! the complex-DCT-then-recombine procedure; the axis multiplication happens
//! entrywise afterwards.
template <typename Scalar>
QuaternionTensor<Scalar> qtdct_forward(const QuaternionTensor<Scalar>& t,
                                       const QtdctContext<Scalar>& ctx) {
  internal::require_ctx(ctx, t, "qtdct_forward");
  return left_scaled(internal::mode_products(t, ctx.c1, ctx.c2, ctx.c3), ctx.axis);
}

//! Inverse of qtdct_forward: multiply by u^{-1} = -u, then inverse mode
//! products with C_i^{-1} = C_i^T.
template <typename Scalar>
QuaternionTensor<Scalar> qtdct_inverse(const QuaternionTensor<Scalar>& s,
                                       const QtdctContext<Scalar>& ctx) {
  internal::require_ctx(ctx, s, "qtdct_inverse");
  const Eigen::MatrixX<Scalar> c1t = ctx.c1.transpose(), c2t = ctx.c2.transpose(),
                               c3t = ctx.c3.transpose();
  return internal::mode_products(left_scaled(s, -ctx.axis), c1t, c2t, c3t);
}

//! Right-handed variant: (T x1 C1 x2 C2 x3 C3) * u. Not used by the solver.
template <typename Scalar>
QuaternionTensor<Scalar> qtdct_forward_right(const QuaternionTensor<Scalar>& t,
                                             const QtdctContext<Scalar>& ctx) {
  internal::require_ctx(ctx, t, "qtdct_forward_right");
  return right_scaled(internal::mode_products(t, ctx.c1, ctx.c2, ctx.c3), ctx.axis);
}

template <typename Scalar>
QuaternionTensor<Scalar> qtdct_inverse_right(const QuaternionTensor<Scalar>& s,
                                             const QtdctContext<Scalar>& ctx) {
  internal::require_ctx(ctx, s, "qtdct_inverse_right");
  const Eigen::MatrixX<Scalar> c1t = ctx.c1.transpose(), c2t = ctx.c2.transpose(),
                               c3t = ctx.c3.transpose();
  return internal::mode_products(right_scaled(s, -ctx.axis), c1t, c2t, c3t);
}

//! Histogram of entry moduli with uniform bins over [0, max], plus the
//! fraction of entries below 1e-3 * max (the headline sparsity number).
template <typename Scalar>
struct SparsityProfile {
  std::vector<Scalar> bin_left, bin_right;
  std::vector<std::size_t> counts;
  Scalar max_modulus{0};
  Scalar sparse_fraction{0};  // entries with modulus < 1e-3 * max
};

template <typename Scalar>
SparsityProfile<Scalar> sparsity_profile(const QuaternionTensor<Scalar>& s, int bins) {
  if (bins < 2) throw std::invalid_argument("sparsity_profile: need at least 2 bins");
  SparsityProfile<Scalar> prof;
  prof.counts.assign(static_cast<std::size_t>(bins), 0);

  std::vector<Scalar> moduli;
  moduli.reserve(static_cast<std::size_t>(s.size()));
  for (Index k = 0; k < s.depth(); ++k) {
    const auto mods =
        (s.slice(k).p().array().abs2() + s.slice(k).q().array().abs2()).sqrt().eval();
    for (Index j = 0; j < mods.cols(); ++j)
      for (Index i = 0; i < mods.rows(); ++i) moduli.push_back(mods(i, j));
  }
  for (const Scalar m : moduli) prof.max_modulus = std::max(prof.max_modulus, m);

  const Scalar width = prof.max_modulus > Scalar(0)
                           ? prof.max_modulus / Scalar(bins)
                           : Scalar(1);  // degenerate all-zero input: one catch-all binning
  prof.bin_left.resize(static_cast<std::size_t>(bins));
  prof.bin_right.resize(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    prof.bin_left[static_cast<std::size_t>(b)] = width * Scalar(b);
    prof.bin_right[static_cast<std::size_t>(b)] = width * Scalar(b + 1);
  }

  const Scalar cut = Scalar(1e-3) * prof.max_modulus;
  std::size_t below = 0;
  for (const Scalar m : moduli) {
    int b = prof.max_modulus > Scalar(0) ? static_cast<int>(m / width) : 0;
    if (b >= bins) b = bins - 1;  // the maximum itself lands in the last bin
    ++prof.counts[static_cast<std::size_t>(b)];
    if (m < cut || prof.max_modulus == Scalar(0)) ++below;
  }
  prof.sparse_fraction = moduli.empty() ? Scalar(0)
                                        : Scalar(below) / Scalar(moduli.size());
  return prof;
}

}  // namespace qtc

#pragma once

#include <limits>

#include "qtc/parallel.hpp"
#include "qtc/qsvd.hpp"
#include "qtc/transform.hpp"

namespace qtc {

//! Weight and offset of the logarithmic singular-value penalty
//! lambda * log(sigma + eps); the thresholding rule below is for p = 1.
template <typename Scalar>
struct LogPenaltyParams {
  Scalar lambda;
  Scalar eps;
};

//! Scalar logarithmic thresholding.
//!
//! Minimizes h(a) = (a - x)^2 / 2 + lambda * log(a + eps) over a >= 0.
//! With Delta = (x - eps)^2 - 4 (lambda - x eps): zero when Delta <= 0,
//! otherwise the better of 0 and the stationary point (x - eps + sqrt(Delta))/2.
//! Ties and negative stationary points resolve to 0.
template <typename Scalar>
Scalar log_scalar_threshold(Scalar x, const LogPenaltyParams<Scalar>& params) {
  const Scalar delta = (x - params.eps) * (x - params.eps) - 4 * (params.lambda - x * params.eps);
  if (delta <= Scalar(0)) return Scalar(0);
  const Scalar a = (x - params.eps + std::sqrt(delta)) / Scalar(2);
  if (a <= Scalar(0)) return Scalar(0);
  const auto h = [&](Scalar v) {
    return (v - x) * (v - x) / Scalar(2) + params.lambda * std::log(v + params.eps);
  };
  return h(a) < h(Scalar(0)) ? a : Scalar(0);
}

namespace internal {

// Shared scaffold of the singular-value prox operators: per-slice SVD in the
// transform domain, a scalar rule applied to each singular value, low-rank
// recomposition, inverse transform. `rule` maps one singular value to its
// shrunk replacement. If sum_out is non-null it receives the sum of the
// shrunk singular values (the post-prox nuclear norm, free to collect here).
template <typename Scalar, typename Rule>
QuaternionTensor<Scalar> singular_value_prox(const QuaternionTensor<Scalar>& x,
                                             const TransformSpec<Scalar>& spec, Rule rule,
                                             Scalar* sum_out) {
  const Index i3 = x.depth();
  auto hat = mode3_transform(x, spec, TransformDirection::Forward);
  Eigen::VectorX<Scalar> slice_sums = Eigen::VectorX<Scalar>::Zero(i3);
  parallel_for(i3, [&](Index k) {
    QsvdResult<Scalar> r = qsvd(hat.slice(k));
    Eigen::VectorX<Scalar> shrunk(r.singularValues.size());
    for (Index i = 0; i < shrunk.size(); ++i) shrunk(i) = rule(r.singularValues(i));
    slice_sums(k) = shrunk.sum();
    // keep only the surviving columns: hat_k = U_r diag(shrunk_r) V_r^H
    Index keep = 0;
    while (keep < shrunk.size() && shrunk(keep) > Scalar(0)) ++keep;
    if (keep == 0) {
      hat.slice(k).setZero();
      return;
    }
    QuaternionMatrix<Scalar> left = r.U.leftCols(keep);
    left.p() *= shrunk.head(keep).asDiagonal();
    left.q() *= shrunk.head(keep).asDiagonal();
    hat.slice(k) = left * r.V.leftCols(keep).adjoint();
  });
  if (sum_out) *sum_out = slice_sums.sum();
  return mode3_transform(hat, spec, TransformDirection::Inverse);
}

}  // namespace internal

//! Quaternion tensor singular value thresholding: subtract tau from every
//! transform-domain singular value and clamp at zero. Solves
//! min tau ||T||_* + ||T - X||_F^2 / 2.
template <typename Scalar>
QuaternionTensor<Scalar> qtsvt(const QuaternionTensor<Scalar>& x, Scalar tau,
                               const TransformSpec<Scalar>& spec, Scalar* nuclear_out = nullptr) {
  if (tau < Scalar(0)) throw std::invalid_argument("qtsvt: tau must be nonnegative");
  return internal::singular_value_prox(
      x, spec, [tau](Scalar s) { return std::max(s - tau, Scalar(0)); }, nuclear_out);
}

//! Logarithmic singular value thresholding: log_scalar_threshold on every
//! transform-domain singular value. Solves
//! min lambda ||T||_L + ||T - X||_F^2 / 2 for the p = 1 logarithmic norm.
template <typename Scalar>
QuaternionTensor<Scalar> qtlsvt(const QuaternionTensor<Scalar>& x,
                                const LogPenaltyParams<Scalar>& params,
                                const TransformSpec<Scalar>& spec, Scalar* nuclear_out = nullptr) {
  if (!(params.lambda > Scalar(0)) || !(params.eps > Scalar(0)))
    throw std::invalid_argument("qtlsvt: need lambda > 0 and eps > 0");
  return internal::singular_value_prox(
      x, spec, [&params](Scalar s) { return log_scalar_threshold(s, params); }, nuclear_out);
}

//! Entrywise quaternion soft threshold at level tau (modulus shrinkage).
template <typename Scalar>
QuaternionTensor<Scalar> l1_prox(const QuaternionTensor<Scalar>& x, Scalar tau) {
  if (tau < Scalar(0)) throw std::invalid_argument("l1_prox: tau must be nonnegative");
  QuaternionTensor<Scalar> out(x.rows(), x.cols(), x.depth());
  for (Index k = 0; k < x.depth(); ++k) {
    const auto& s = x.slice(k);
    const auto mod = (s.p().array().abs2() + s.q().array().abs2()).sqrt().eval();
    // scale = max(|.| - tau, 0) / |.|, with zero entries mapped to scale 0
    const auto scale =
        ((mod - tau).max(Scalar(0)) / mod.max(std::numeric_limits<Scalar>::min())).eval();
    out.slice(k).p() = s.p().array() * scale;
    out.slice(k).q() = s.q().array() * scale;
  }
  return out;
}

}  // namespace qtc

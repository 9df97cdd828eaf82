#pragma once

#include "qtc/parallel.hpp"
#include "qtc/qsvd.hpp"
#include "qtc/transform.hpp"

namespace qtc {

//! T = U *QT D *QT V^H with f-diagonal D: in the transform domain every slice
//! of D is real, nonnegative, diagonal, and descending.
template <typename Scalar>
struct TqtSvdResult {
  QuaternionTensor<Scalar> U;  // I1 x I1 x I3
  QuaternionTensor<Scalar> D;  // I1 x I2 x I3, f-diagonal
  QuaternionTensor<Scalar> V;  // I2 x I2 x I3
};

//! Transform-based tensor SVD: per-slice quaternion SVD in the transform
//! domain, mapped back with the inverse transform.
template <typename Scalar>
TqtSvdResult<Scalar> tqt_svd(const QuaternionTensor<Scalar>& t, const TransformSpec<Scalar>& spec) {
  const Index i1 = t.rows(), i2 = t.cols(), i3 = t.depth();
  const auto hat = mode3_transform(t, spec, TransformDirection::Forward);
  QuaternionTensor<Scalar> u(i1, i1, i3), d(i1, i2, i3), v(i2, i2, i3);
  parallel_for(i3, [&](Index k) {
    QsvdResult<Scalar> r = qsvd(hat.slice(k));
    u.slice(k) = std::move(r.U);
    v.slice(k) = std::move(r.V);
    auto& dk = d.slice(k);
    for (Index i = 0; i < r.singularValues.size(); ++i)
      dk.p()(i, i) = r.singularValues(i);
  });
  return {mode3_transform(u, spec, TransformDirection::Inverse),
          mode3_transform(d, spec, TransformDirection::Inverse),
          mode3_transform(v, spec, TransformDirection::Inverse)};
}

//! Per-slice singular values of the transform-domain tensor.
//! Column k holds the descending singular values of L(T)^(k).
template <typename Scalar>
struct TubalSpectrum {
  Eigen::MatrixX<Scalar> values;  // min(I1, I2) x I3

  //! Tubal rank: largest per-slice count of values above rel_tol * global max.
  Index tubalRank(Scalar rel_tol = Scalar(1e-10)) const {
    const Scalar top = values.size() > 0 ? values.maxCoeff() : Scalar(0);
    if (top <= Scalar(0)) return 0;
    const Scalar cut = rel_tol * top;
    Index rank = 0;
    for (Index k = 0; k < values.cols(); ++k) {
      Index r = 0;
      while (r < values.rows() && values(r, k) > cut) ++r;
      rank = std::max(rank, r);
    }
    return rank;
  }

  Scalar sum() const { return values.sum(); }
};

template <typename Scalar>
TubalSpectrum<Scalar> tubal_spectrum(const QuaternionTensor<Scalar>& t,
                                     const TransformSpec<Scalar>& spec) {
  const auto hat = mode3_transform(t, spec, TransformDirection::Forward);
  TubalSpectrum<Scalar> s;
  s.values.resize(std::min(t.rows(), t.cols()), t.depth());
  parallel_for(t.depth(), [&](Index k) { s.values.col(k) = qsvd_values(hat.slice(k)); });
  return s;
}

//! The three rank surrogates evaluated on one spectrum.
template <typename Scalar>
struct RankSurrogates {
  Scalar qtnn;    // sum of all singular values
  Scalar qt_rnn;  // sum skipping the r largest per slice
  Scalar qtln;    // sum of log(sigma^p + eps)
};

template <typename Scalar>
RankSurrogates<Scalar> rank_surrogates(const TubalSpectrum<Scalar>& spectrum, Index r, Scalar p,
                                       Scalar eps) {
  if (r < 0 || r >= spectrum.values.rows())
    throw InvalidTruncation("rank_surrogates: r must satisfy 0 <= r < min(I1, I2)");
  if (!(p > Scalar(0)) || p > Scalar(1) || !(eps > Scalar(0)))
    throw std::invalid_argument("rank_surrogates: need p in (0, 1] and eps > 0");
  RankSurrogates<Scalar> out{0, 0, 0};
  out.qtnn = spectrum.values.sum();
  out.qt_rnn = out.qtnn - spectrum.values.topRows(r).sum();
  out.qtln = (spectrum.values.array().pow(p) + eps).log().sum();
  return out;
}

}  // namespace qtc

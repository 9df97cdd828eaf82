#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "qtc/quaternion_matrix.hpp"

namespace qtc {

template <typename Scalar>
using ComplexVector = Eigen::Vector<std::complex<Scalar>, Eigen::Dynamic>;

//! Q = U * diag(singularValues) * V^H with unitary quaternion U (MxM), V (NxN)
//! and real nonnegative singular values in descending order.
template <typename Scalar>
struct QsvdResult {
  QuaternionMatrix<Scalar> U;
  Eigen::VectorX<Scalar> singularValues;
  QuaternionMatrix<Scalar> V;
};

namespace internal {

// c(v) = [v_p; -conj(v_q)]: the complex-adjoint column embedding of a
// quaternion vector. It is a bijection C^{2M} <-> H^M.
template <typename Scalar>
void set_quaternion_column(QuaternionMatrix<Scalar>& m, Index col, const ComplexVector<Scalar>& c) {
  const Index rows = m.rows();
  m.p().col(col) = c.head(rows);
  m.q().col(col) = -c.tail(rows).conjugate();
}

// J * conj(c) with J = [[0, I], [-I, 0]]. Embeds right-multiplication by j:
// j_partner(c(v)) = c(v * j), so {c, j_partner(c)} spans the same quaternion
// column as v.
template <typename Scalar>
ComplexVector<Scalar> j_partner(const ComplexVector<Scalar>& c) {
  const Index half = c.size() / 2;
  ComplexVector<Scalar> out(c.size());
  out.head(half) = c.tail(half).conjugate();
  out.tail(half) = -c.head(half).conjugate();
  return out;
}

// Picks `count` unit columns from the span of `basis` so that every pick is
// orthogonal to all previously picked columns *and* their j-partners. This is
// quaternion Gram-Schmidt expressed on the complex embedding; it restores the
// exact block structure of the complex adjoint inside a degenerate singular
// subspace, where the plain complex SVD is free to mix the pairs.
template <typename Scalar>
ComplexMatrix<Scalar> select_structured_columns(const ComplexMatrix<Scalar>& basis, Index count) {
  const Index dim = basis.rows();
  ComplexMatrix<Scalar> picked(dim, count);
  ComplexMatrix<Scalar> span(dim, 2 * count);
  Index taken = 0;
  for (Index j = 0; j < basis.cols() && taken < count; ++j) {
    ComplexVector<Scalar> r = basis.col(j);
    // two projection passes keep orthogonality near machine precision
    for (int pass = 0; pass < 2 && taken > 0; ++pass) {
      auto sel = span.leftCols(2 * taken);
      r -= sel * (sel.adjoint() * r).eval();
    }
    const Scalar n = r.norm();
    if (n < Scalar(1e-6)) continue;  // candidate already (numerically) spanned
    r /= n;
    picked.col(taken) = r;
    span.col(2 * taken) = r;
    span.col(2 * taken + 1) = j_partner<Scalar>(r);
    ++taken;
  }
  if (taken < count)
    throw ConvergenceFailure("qsvd: structured column selection broke down");
  return picked;
}

// Rescales column `col` of U (and optionally the matching column of V) by a
// unit quaternion so that U's largest-modulus entry in that column becomes a
// positive real. Keeps the decomposition valid and the output deterministic.
template <typename Scalar>
void fix_column_phase(QuaternionMatrix<Scalar>& u, Index col, QuaternionMatrix<Scalar>* v) {
  Index imax = 0;
  Scalar best = -1;
  for (Index i = 0; i < u.rows(); ++i) {
    const Scalar mod2 = std::norm(u.p()(i, col)) + std::norm(u.q()(i, col));
    if (mod2 > best) {
      best = mod2;
      imax = i;
    }
  }
  if (best <= Scalar(0)) return;
  const Quaternion<Scalar> e = u(imax, col);
  const Quaternion<Scalar> d = e.conjugate() * (Scalar(1) / e.norm());
  const auto scale_col = [&d](QuaternionMatrix<Scalar>& m, Index c) {
    const std::complex<Scalar> dp = d.p(), dq = d.q();
    const ComplexVector<Scalar> mp = m.p().col(c), mq = m.q().col(c);
    m.p().col(c) = mp * dp - mq * std::conj(dq);
    m.q().col(c) = mp * dq + mq * std::conj(dp);
  };
  scale_col(u, col);
  if (v) scale_col(*v, col);
}

}  // namespace internal

//! Quaternion SVD through the complex adjoint.
//!
//! The adjoint's singular values occur in pairs; one representative per pair
//! is kept. Vectors are recovered pairwise from the adjoint's singular
//! subspaces, regrouping exactly degenerate values so the extracted quaternion
//! factors stay unitary, then phase-normalized for reproducibility.
template <typename Scalar>
QsvdResult<Scalar> qsvd(const QuaternionMatrix<Scalar>& m) {
  const Index rows = m.rows(), cols = m.cols();
  if (rows < 1 || cols < 1) throw DimensionMismatch("qsvd: empty matrix");
  const Index rank_bound = std::min(rows, cols);

  const ComplexMatrix<Scalar> adj = complex_adjoint(m);
  Eigen::BDCSVD<ComplexMatrix<Scalar>> svd(adj, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success)
    throw ConvergenceFailure("qsvd: complex SVD did not converge");

  const auto& sv = svd.singularValues();  // 2 * rank_bound values, descending
  Eigen::VectorX<Scalar> sigma(rank_bound);
  for (Index i = 0; i < rank_bound; ++i) sigma(i) = (sv(2 * i) + sv(2 * i + 1)) / Scalar(2);

  const Scalar sigma_max = sigma.size() > 0 ? sigma(0) : Scalar(0);
  const Scalar tiny = Scalar(1e-12) * sigma_max;
  const Scalar group_gap = Scalar(1e-11) * sigma_max;

  QsvdResult<Scalar> out{QuaternionMatrix<Scalar>(rows, rows), std::move(sigma),
                         QuaternionMatrix<Scalar>(cols, cols)};

  // Nonzero singular values, walked in groups of (near-)equal value. Left
  // vectors come from the group's left subspace; each right vector is the
  // exact partner A^H c / ||A^H c||.
  Index p = 0;
  while (p < rank_bound && out.singularValues(p) > tiny) {
    Index p_end = p + 1;
    while (p_end < rank_bound && out.singularValues(p_end) > tiny &&
           out.singularValues(p_end - 1) - out.singularValues(p_end) <= group_gap)
      ++p_end;
    const Index g = p_end - p;
    const ComplexMatrix<Scalar> left =
        internal::select_structured_columns<Scalar>(svd.matrixU().middleCols(2 * p, 2 * g), g);
    for (Index t = 0; t < g; ++t) {
      internal::set_quaternion_column(out.U, p + t, ComplexVector<Scalar>(left.col(t)));
      ComplexVector<Scalar> right = adj.adjoint() * left.col(t);
      right /= right.norm();
      internal::set_quaternion_column(out.V, p + t, right);
    }
    p = p_end;
  }

  // Zero/tiny singular values and unitary completion: left and right sides
  // decouple, so fill the remaining columns from each factor's trailing block.
  const Index first_free = p;
  if (first_free < rows) {
    const ComplexMatrix<Scalar> left = internal::select_structured_columns<Scalar>(
        svd.matrixU().rightCols(2 * rows - 2 * first_free), rows - first_free);
    for (Index t = 0; t < rows - first_free; ++t)
      internal::set_quaternion_column(out.U, first_free + t, ComplexVector<Scalar>(left.col(t)));
  }
  if (first_free < cols) {
    const ComplexMatrix<Scalar> right = internal::select_structured_columns<Scalar>(
        svd.matrixV().rightCols(2 * cols - 2 * first_free), cols - first_free);
    for (Index t = 0; t < cols - first_free; ++t)
      internal::set_quaternion_column(out.V, first_free + t, ComplexVector<Scalar>(right.col(t)));
  }

  for (Index c = 0; c < rows; ++c)
    internal::fix_column_phase(out.U, c, c < first_free ? &out.V : nullptr);
  for (Index c = first_free; c < cols; ++c)
    internal::fix_column_phase<Scalar>(out.V, c, nullptr);

  return out;
}

//! Singular values only (no vectors); same pairing rule as qsvd.
template <typename Scalar>
Eigen::VectorX<Scalar> qsvd_values(const QuaternionMatrix<Scalar>& m) {
  Eigen::BDCSVD<ComplexMatrix<Scalar>> svd(complex_adjoint(m));
  if (svd.info() != Eigen::Success)
    throw ConvergenceFailure("qsvd_values: complex SVD did not converge");
  const auto& sv = svd.singularValues();
  const Index rank_bound = std::min(m.rows(), m.cols());
  Eigen::VectorX<Scalar> sigma(rank_bound);
  for (Index i = 0; i < rank_bound; ++i) sigma(i) = (sv(2 * i) + sv(2 * i + 1)) / Scalar(2);
  return sigma;
}

//! Count of singular values above the relative cutoff rel_tol * sigma_1.
template <typename Scalar>
Index numerical_rank(const Eigen::VectorX<Scalar>& sigma, Scalar rel_tol = Scalar(1e-10)) {
  if (sigma.size() == 0 || sigma(0) <= Scalar(0)) return 0;
  const Scalar cut = rel_tol * sigma(0);
  Index r = 0;
  while (r < sigma.size() && sigma(r) > cut) ++r;
  return r;
}

}  // namespace qtc

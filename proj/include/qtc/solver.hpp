#pragma once

#include <chrono>
#include <optional>

#include "qtc/mask.hpp"
#include "qtc/prox.hpp"
#include "qtc/qtdct.hpp"
#include "qtc/tqt_svd.hpp"

namespace qtc {

//! Observed tensor plus its index set. Entries outside the mask are zero.
template <typename Scalar>
struct Observation {
  QuaternionTensor<Scalar> data;
  MaskTensor mask;

  //! Builds a valid observation by projecting `full` onto the mask.
  static Observation fromMasked(const QuaternionTensor<Scalar>& full, MaskTensor mask) {
    Observation obs{QuaternionTensor<Scalar>::Zero(full.rows(), full.cols(), full.depth()),
                    std::move(mask)};
    if (obs.mask.dim(0) != full.rows() || obs.mask.dim(1) != full.cols() ||
        obs.mask.dim(2) != full.depth())
      throw DimensionMismatch("Observation: mask shape differs from tensor shape");
    if (obs.mask.count() == 0)
      throw std::invalid_argument("Observation: mask has no observed entries");
    for (Index k = 0; k < full.depth(); ++k)
      for (Index j = 0; j < full.cols(); ++j)
        for (Index i = 0; i < full.rows(); ++i)
          if (obs.mask(i, j, k)) obs.data.set(i, j, k, full(i, j, k));
    return obs;
  }

  void validate() const {
    if (mask.dim(0) != data.rows() || mask.dim(1) != data.cols() || mask.dim(2) != data.depth())
      throw DimensionMismatch("Observation: mask shape differs from tensor shape");
    if (mask.count() == 0)
      throw std::invalid_argument("Observation: mask has no observed entries");
    for (Index k = 0; k < data.depth(); ++k)
      for (Index j = 0; j < data.cols(); ++j)
        for (Index i = 0; i < data.rows(); ++i)
          if (!mask(i, j, k) && !(data(i, j, k) == Quaternion<Scalar>::zero()))
            throw std::invalid_argument("Observation: nonzero entry outside the mask");
  }
};

enum class SolverVariant {
  Rnns1,  // truncated nuclear norm, QTSVT step
  Rnns2   // truncated nuclear norm with logarithmic penalty, QTLSVT step
};

//! All hyperparameters of the two-step solver. Defaults follow the reference
//! settings (beta1 = 0.1, lambda = 0.05, rho = 1.1 for Rnns1 / 1.01 for Rnns2).
template <typename Scalar>
struct SolverConfig {
  SolverVariant variant = SolverVariant::Rnns1;
  Index truncation = -1;        // r; negative selects ceil(0.05 * min(I1, I2))
  Scalar lambda = Scalar(0.05);  // sparsity weight
  Scalar beta1 = Scalar(0.1);    // initial penalty
  std::optional<Scalar> rho;     // penalty growth; defaults by variant
  Scalar beta_max = Scalar(1e7);
  Scalar eps_inner = Scalar(1e-4);  // relative inner tolerance
  Scalar eps_outer = Scalar(1e-4);  // relative outer tolerance
  int max_inner = 500;
  int max_outer = 10;
  Scalar log_eps = Scalar(0.1);  // epsilon of the logarithmic penalty (Rnns2)
  std::uint64_t seed = 0;        // multiplier initialization

  Scalar growth() const {
    if (rho) return *rho;
    return variant == SolverVariant::Rnns1 ? Scalar(1.1) : Scalar(1.01);
  }
  Index truncationFor(Index i1, Index i2) const {
    if (truncation >= 0) return truncation;
    return static_cast<Index>(std::ceil(0.05 * static_cast<double>(std::min(i1, i2))));
  }
  void validate() const {
    if (!(lambda > Scalar(0)) || !(beta1 > Scalar(0)) || !(beta_max >= beta1) ||
        !(growth() >= Scalar(1)) || !(eps_inner > Scalar(0)) || !(eps_outer > Scalar(0)) ||
        max_inner < 1 || max_outer < 1 || !(log_eps > Scalar(0)))
      throw std::invalid_argument("SolverConfig: invalid parameter");
  }
};

//! One inner-iteration trace entry: constraint residuals, the running
//! objective surrogate ||T||_* (or its shrunk stand-in) + lambda ||S||_1,
//! and the penalty used for the iteration.
template <typename Scalar>
struct IterationRecord {
  int outer;
  int inner;
  Scalar res_primal;     // ||T - H||_F
  Scalar res_transform;  // ||S - C(T)||_F
  Scalar objective;
  Scalar beta;
};

template <typename Scalar>
struct SolveReport {
  int outer_iterations = 0;
  int inner_iterations = 0;
  bool iteration_limit = false;  // some inner pass (or the outer loop) hit its cap
  double seconds = 0;
  std::vector<IterationRecord<Scalar>> trace;
};

//! ADMM iterate bundle; all five tensors share the observation's shape.
template <typename Scalar>
struct SolverState {
  QuaternionTensor<Scalar> T, S, H, Y, Z;
  Scalar beta;
  int k = 0;
};

namespace internal {

template <typename Scalar>
QuaternionTensor<Scalar> random_multiplier(Index i1, Index i2, Index i3, std::mt19937_64& rng) {
  QuaternionTensor<Scalar> t(i1, i2, i3);
  for (Index k = 0; k < i3; ++k)
    for (Index j = 0; j < i2; ++j)
      for (Index i = 0; i < i1; ++i)
        t.set(i, j, k,
              {Scalar(0.01 * uniform_symmetric(rng)), Scalar(0.01 * uniform_symmetric(rng)),
               Scalar(0.01 * uniform_symmetric(rng)), Scalar(0.01 * uniform_symmetric(rng))});
  return t;
}

//! P_{Omega^c}(t) + P_Omega(o): re-impose the observed data.
template <typename Scalar>
void project_onto_data(QuaternionTensor<Scalar>& t, const Observation<Scalar>& obs) {
  for (Index k = 0; k < t.depth(); ++k)
    for (Index j = 0; j < t.cols(); ++j)
      for (Index i = 0; i < t.rows(); ++i)
        if (obs.mask(i, j, k)) t.set(i, j, k, obs.data(i, j, k));
}

}  // namespace internal

//! Step 1 of the outer loop: truncation factors from the tensor SVD,
//! A = U(:, 1:r, :)^H and B = V(:, 1:r, :)^H.
template <typename Scalar>
std::pair<QuaternionTensor<Scalar>, QuaternionTensor<Scalar>> truncated_factors(
    const QuaternionTensor<Scalar>& t, Index r, const TransformSpec<Scalar>& spec) {
  if (r < 1 || r >= std::min(t.rows(), t.cols()))
    throw InvalidTruncation("truncated_factors: need 1 <= r < min(I1, I2)");
  TqtSvdResult<Scalar> svd = tqt_svd(t, spec);
  return {svd.U.leadingColumns(r).adjoint(), svd.V.leadingColumns(r).adjoint()};
}

//! T-update: threshold G = (H - Y/beta + C^{-1}(S + Z/beta)) / 2 with
//! tau = 1/(2 beta); Rnns2 swaps the flat threshold for the logarithmic rule
//! at the same weight. G is the center of the two quadratic terms of the
//! T-subproblem of the augmented Lagrangian (the multiplier enters the first
//! term as -Y/beta after completing the square).
template <typename Scalar>
QuaternionTensor<Scalar> update_T(const SolverState<Scalar>& state, const SolverConfig<Scalar>& cfg,
                                  const QtdctContext<Scalar>& ctx, const TransformSpec<Scalar>& spec,
                                  Scalar* nuclear_out = nullptr) {
  const Scalar inv_beta = Scalar(1) / state.beta;
  const QuaternionTensor<Scalar> g =
      Scalar(0.5) * (state.H - state.Y * inv_beta +
                     qtdct_inverse(state.S + state.Z * inv_beta, ctx));
  const Scalar tau = Scalar(1) / (Scalar(2) * state.beta);
  if (cfg.variant == SolverVariant::Rnns1) return qtsvt(g, tau, spec, nuclear_out);
  return qtlsvt(g, LogPenaltyParams<Scalar>{tau, cfg.log_eps}, spec, nuclear_out);
}

//! S-update: entrywise shrinkage of C(T) - Z/beta at level 4 lambda / beta.
//! state.T must already hold the freshly updated iterate.
template <typename Scalar>
QuaternionTensor<Scalar> update_S(const SolverState<Scalar>& state, const SolverConfig<Scalar>& cfg,
                                  const QtdctContext<Scalar>& ctx) {
  return l1_prox(qtdct_forward(state.T, ctx) - state.Z * (Scalar(1) / state.beta),
                 Scalar(4) * cfg.lambda / state.beta);
}

//! H-update given the precomputed truncation term A^H *QT B (zero tensor when
//! r = 0): closed-form quadratic minimizer, then data re-projection.
template <typename Scalar>
QuaternionTensor<Scalar> update_H_with_term(const SolverState<Scalar>& state,
                                            const Observation<Scalar>& obs,
                                            const QuaternionTensor<Scalar>& truncation_term) {
  QuaternionTensor<Scalar> h = state.T + (state.Y + truncation_term) * (Scalar(1) / state.beta);
  internal::project_onto_data(h, obs);
  return h;
}

//! H-update from the truncation factors themselves.
template <typename Scalar>
QuaternionTensor<Scalar> update_H(const SolverState<Scalar>& state, const Observation<Scalar>& obs,
                                  const QuaternionTensor<Scalar>& a, const QuaternionTensor<Scalar>& b,
                                  const TransformSpec<Scalar>& spec) {
  if (a.rows() == 0 || a.cols() == 0)
    return update_H_with_term(state, obs,
                              QuaternionTensor<Scalar>::Zero(state.T.rows(), state.T.cols(),
                                                             state.T.depth()));
  return update_H_with_term(state, obs, qt_product(a.adjoint(), b, spec));
}

template <typename Scalar>
struct AdmmResult {
  QuaternionTensor<Scalar> T;
  int iterations = 0;
  bool hit_limit = false;
};

//! Step 2: the inner ADMM of both variants. Iterates the T/S/H updates, the
//! two multiplier ascent steps, and the capped geometric penalty growth until
//! the relative change of T drops below eps_inner or max_inner is reached.
template <typename Scalar>
AdmmResult<Scalar> admm_inner(const Observation<Scalar>& obs, const SolverConfig<Scalar>& cfg,
                              const QuaternionTensor<Scalar>& a, const QuaternionTensor<Scalar>& b,
                              const QtdctContext<Scalar>& ctx, const TransformSpec<Scalar>& spec,
                              const QuaternionTensor<Scalar>& t_init,
                              std::vector<IterationRecord<Scalar>>* trace = nullptr,
                              int outer_index = 1) {
  const Index i1 = t_init.rows(), i2 = t_init.cols(), i3 = t_init.depth();
  const bool truncated = a.rows() > 0 && a.cols() > 0;
  const QuaternionTensor<Scalar> correction =
      truncated ? qt_product(a.adjoint(), b, spec) : QuaternionTensor<Scalar>::Zero(i1, i2, i3);

  SolverState<Scalar> state{t_init, qtdct_forward(t_init, ctx), t_init,
                            QuaternionTensor<Scalar>(), QuaternionTensor<Scalar>(), cfg.beta1, 0};
  std::mt19937_64 rng(cfg.seed);
  state.Y = internal::random_multiplier<Scalar>(i1, i2, i3, rng);
  state.Z = internal::random_multiplier<Scalar>(i1, i2, i3, rng);

  AdmmResult<Scalar> out;
  for (int k = 1; k <= cfg.max_inner; ++k) {
    state.k = k;
    Scalar nuclear = 0;
    QuaternionTensor<Scalar> t_next = update_T(state, cfg, ctx, spec, &nuclear);
    const Scalar step = (t_next - state.T).norm();
    const Scalar prev_scale = std::max(state.T.norm(), Scalar(1));
    state.T = std::move(t_next);

    state.S = update_S(state, cfg, ctx);
    state.H = update_H_with_term(state, obs, correction);

    const QuaternionTensor<Scalar> ct = qtdct_forward(state.T, ctx);
    const QuaternionTensor<Scalar> primal_gap = state.T - state.H;
    const QuaternionTensor<Scalar> transform_gap = state.S - ct;
    state.Y += state.beta * primal_gap;
    state.Z += state.beta * transform_gap;

    if (trace)
      trace->push_back({outer_index, k, primal_gap.norm(), transform_gap.norm(),
                        nuclear + cfg.lambda * state.S.l1Norm(), state.beta});

    state.beta = std::min(cfg.growth() * state.beta, cfg.beta_max);
    out.iterations = k;
    // Terminate on a small iterate change only once both constraint residuals
    // have settled; the bare change criterion also fires on the early
    // hard-threshold plateau (T pinned at zero while the multipliers ramp up),
    // which is not convergence.
    const Scalar res_scale = Scalar(10) * cfg.eps_inner * prev_scale;
    if (step <= cfg.eps_inner * prev_scale && primal_gap.norm() <= res_scale &&
        transform_gap.norm() <= res_scale) {
      out.T = std::move(state.T);
      return out;
    }
  }
  out.hit_limit = true;
  out.T = std::move(state.T);
  return out;
}

//! The full two-step method: alternate truncation-factor refresh (Step 1)
//! and inner ADMM (Step 2) until the outer iterate stabilizes, then re-impose
//! the observed entries on the result.
template <typename Scalar>
std::pair<QuaternionTensor<Scalar>, SolveReport<Scalar>> solve(const Observation<Scalar>& obs,
                                                               const SolverConfig<Scalar>& cfg,
                                                               const QtdctContext<Scalar>& ctx,
                                                               const TransformSpec<Scalar>& spec) {
  cfg.validate();
  obs.validate();
  const Index i1 = obs.data.rows(), i2 = obs.data.cols();
  const Index r = cfg.truncationFor(i1, i2);
  if (r >= std::min(i1, i2))
    throw InvalidTruncation("solve: truncation must satisfy r < min(I1, I2)");

  const auto started = std::chrono::steady_clock::now();
  SolveReport<Scalar> report;
  QuaternionTensor<Scalar> t = obs.data;
  for (int l = 1; l <= cfg.max_outer; ++l) {
    QuaternionTensor<Scalar> a, b;
    if (r >= 1) std::tie(a, b) = truncated_factors(t, r, spec);
    AdmmResult<Scalar> inner = admm_inner(obs, cfg, a, b, ctx, spec, t, &report.trace, l);
    report.outer_iterations = l;
    report.inner_iterations += inner.iterations;
    report.iteration_limit = report.iteration_limit || inner.hit_limit;
    const Scalar delta = (inner.T - t).norm();
    const Scalar scale = std::max(t.norm(), Scalar(1));
    t = std::move(inner.T);
    if (delta <= cfg.eps_outer * scale) break;
    if (l == cfg.max_outer) report.iteration_limit = true;
  }
  internal::project_onto_data(t, obs);
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return {std::move(t), std::move(report)};
}

}  // namespace qtc

#pragma once

#include <cstdint>

#include "qtc/media.hpp"
#include "qtc/transform.hpp"

namespace qtc {

//! Pure quaternion tensor with per-slice transform-domain rank exactly `rank`:
//! every transform slice is P diag(d) Q^T * u with orthonormal real P, Q,
//! positive d, and the unit gray axis u. Entries are scaled to max modulus
//! `amplitude`.
QuaternionTensor<double> make_lowrank_tensor(Eigen::Index i1, Eigen::Index i2, Eigen::Index i3,
                                             Eigen::Index rank, std::uint64_t seed,
                                             const TransformSpec<double>& spec,
                                             double amplitude = 0.5);

//! Smooth low-frequency RGB sequence with values in [0, 1]: a seeded mixture
//! of separable cosine modes around mid-gray, shared across channels with
//! per-channel weights.
FrameSequence make_smooth_sequence(Eigen::Index height, Eigen::Index width, Eigen::Index frames,
                                   std::uint64_t seed);

}  // namespace qtc

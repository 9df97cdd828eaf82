#include "qtc/synth.hpp"

#include <cmath>
#include <numbers>

#include "qtc/qtdct.hpp"

namespace qtc {

namespace {

Eigen::MatrixXd random_orthonormal(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  Eigen::MatrixXd g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = uniform_symmetric(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return Eigen::MatrixXd(qr.householderQ()).leftCols(cols);
}

}  // namespace

QuaternionTensor<double> make_lowrank_tensor(Eigen::Index i1, Eigen::Index i2, Eigen::Index i3,
                                             Eigen::Index rank, std::uint64_t seed,
                                             const TransformSpec<double>& spec, double amplitude) {
  if (rank < 1 || rank >= std::min(i1, i2))
    throw InvalidTruncation("make_lowrank_tensor: need 1 <= rank < min(I1, I2)");
  std::mt19937_64 rng(seed);
  QuaternionTensor<double> hat(i1, i2, i3);
  for (Eigen::Index k = 0; k < i3; ++k) {
    const Eigen::MatrixXd p = random_orthonormal(i1, rank, rng);
    const Eigen::MatrixXd q = random_orthonormal(i2, rank, rng);
    Eigen::VectorXd d(rank);
    for (Eigen::Index i = 0; i < rank; ++i) d(i) = 0.5 + uniform_unit(rng);
    hat.slice(k).p().real() = p * d.asDiagonal() * q.transpose();
  }
  QuaternionTensor<double> real_part =
      mode3_transform(hat, spec, TransformDirection::Inverse);

  double peak = 0;
  for (Eigen::Index k = 0; k < i3; ++k)
    peak = std::max(peak, real_part.slice(k).p().real().cwiseAbs().maxCoeff());
  if (peak > 0) real_part *= amplitude / peak;

  // right-multiplying a real tensor by a unit pure quaternion keeps every
  // transform-domain singular value and makes the entries pure
  return right_scaled(real_part, QtdctContext<double>::grayAxis());
}

FrameSequence make_smooth_sequence(Eigen::Index height, Eigen::Index width, Eigen::Index frames,
                                   std::uint64_t seed) {
  constexpr int kModes = 5;
  const double pi = std::numbers::pi;
  std::mt19937_64 rng(seed);

  struct Mode {
    int f1, f2, f3;
    double phase;
    double weight[3];
  };
  std::vector<Mode> modes(kModes);
  double weight_sum[3] = {0, 0, 0};
  for (auto& m : modes) {
    m.f1 = static_cast<int>(uniform_index(rng, 4));
    m.f2 = static_cast<int>(uniform_index(rng, 4));
    m.f3 = static_cast<int>(uniform_index(rng, 3));
    m.phase = pi * uniform_unit(rng);
    for (int c = 0; c < 3; ++c) {
      m.weight[c] = uniform_symmetric(rng);
      weight_sum[c] += std::abs(m.weight[c]);
    }
  }
  // keep every channel inside [0.05, 0.95]
  for (auto& m : modes)
    for (int c = 0; c < 3; ++c) m.weight[c] *= 0.45 / std::max(weight_sum[c], 1e-12);

  FrameSequence seq = FrameSequence::zeros(height, width, frames);
  for (Eigen::Index k = 0; k < frames; ++k) {
    auto& frame = seq.frames[static_cast<std::size_t>(k)];
    for (Eigen::Index i = 0; i < height; ++i)
      for (Eigen::Index j = 0; j < width; ++j) {
        double v[3] = {0.5, 0.5, 0.5};
        for (const auto& m : modes) {
          const double basis = std::cos(pi * m.f1 * (double(i) + 0.5) / double(height)) *
                               std::cos(pi * m.f2 * (double(j) + 0.5) / double(width)) *
                               std::cos(pi * m.f3 * (double(k) + 0.5) / double(frames) + m.phase);
          for (int c = 0; c < 3; ++c) v[c] += m.weight[c] * basis;
        }
        frame.r(i, j) = v[0];
        frame.g(i, j) = v[1];
        frame.b(i, j) = v[2];
      }
  }
  return seq;
}

}  // namespace qtc

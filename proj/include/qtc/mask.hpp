#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qtc/errors.hpp"
#include "qtc/rng.hpp"

#include <Eigen/Core>

namespace qtc {

//! Boolean observation mask over an I1 x I2 x I3 tensor. One flag per
//! quaternion entry: all color channels of a pixel are observed or missing
//! together. Storage order matches the tensor (slice-major, column-major
//! within a slice).
class MaskTensor {
 public:
  MaskTensor() = default;
  MaskTensor(Eigen::Index i1, Eigen::Index i2, Eigen::Index i3)
      : dims_{i1, i2, i3}, bits_(static_cast<std::size_t>(i1 * i2 * i3), 0) {}

  Eigen::Index dim(int k) const { return dims_[static_cast<std::size_t>(k)]; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(bits_.size()); }

  bool operator()(Eigen::Index i1, Eigen::Index i2, Eigen::Index i3) const {
    return bits_[flat(i1, i2, i3)] != 0;
  }
  void set(Eigen::Index i1, Eigen::Index i2, Eigen::Index i3, bool v) {
    bits_[flat(i1, i2, i3)] = v ? 1 : 0;
  }

  //! Flat view in storage order; used by the RLE codec and the samplers.
  const std::vector<std::uint8_t>& raw() const { return bits_; }
  std::vector<std::uint8_t>& raw() { return bits_; }

  Eigen::Index count() const {
    Eigen::Index n = 0;
    for (const auto b : bits_) n += b;
    return n;
  }

  bool sameShape(const MaskTensor& o) const { return dims_ == o.dims_; }

 private:
  std::size_t flat(Eigen::Index i1, Eigen::Index i2, Eigen::Index i3) const {
    return static_cast<std::size_t>((i3 * dims_[1] + i2) * dims_[0] + i1);
  }

  std::array<Eigen::Index, 3> dims_{0, 0, 0};
  std::vector<std::uint8_t> bits_;
};

//! Sampling-rate / seed pair describing a random observation set.
struct MaskSpec {
  double sample_rate;  // in (0, 1]
  std::uint64_t seed;
};

//! Uniform mask with exactly floor(sample_rate * I1 * I2 * I3) observed
//! entries, drawn without replacement from the seeded generator.
inline MaskTensor sample_mask(Eigen::Index i1, Eigen::Index i2, Eigen::Index i3,
                              const MaskSpec& spec) {
  if (!(spec.sample_rate > 0.0) || spec.sample_rate > 1.0)
    throw std::invalid_argument("sample_mask: sample_rate must lie in (0, 1]");
  MaskTensor mask(i1, i2, i3);
  const auto total = static_cast<std::uint64_t>(mask.size());
  const auto wanted = static_cast<std::uint64_t>(spec.sample_rate * static_cast<double>(total));
  std::vector<std::uint32_t> order(total);
  for (std::uint64_t i = 0; i < total; ++i) order[i] = static_cast<std::uint32_t>(i);
  std::mt19937_64 rng(spec.seed);
  // partial Fisher-Yates: the first `wanted` positions become the sample
  for (std::uint64_t i = 0; i < wanted; ++i) {
    const std::uint64_t j = i + uniform_index(rng, total - i);
    std::swap(order[i], order[j]);
    mask.raw()[order[i]] = 1;
  }
  return mask;
}

//! Binary RLE mask file ("QMSK"): 16-byte header, then the first flag value
//! and little-endian u32 run lengths over the flat storage order.
void save_mask(const std::string& path, const MaskTensor& mask);
MaskTensor load_mask(const std::string& path);

}  // namespace qtc

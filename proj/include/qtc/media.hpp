#pragma once

#include <string>
#include <vector>

#include "qtc/mask.hpp"
#include "qtc/quaternion_tensor.hpp"

namespace qtc {

//! RGB frame stack. Channel values live in [0, 1] in memory and are 8-bit on
//! disk (numbered PNG files, lexicographic order).
struct FrameSequence {
  struct Frame {
    Eigen::MatrixXd r, g, b;
  };

  Eigen::Index height = 0, width = 0;
  std::vector<Frame> frames;

  static FrameSequence zeros(Eigen::Index height, Eigen::Index width, Eigen::Index count);
  Eigen::Index frameCount() const { return static_cast<Eigen::Index>(frames.size()); }
  bool sameShape(const FrameSequence& o) const {
    return height == o.height && width == o.width && frames.size() == o.frames.size();
  }
};

//! Reads every *.png in the directory (lexicographic). Throws IoError when the
//! directory is unreadable, empty of frames, or the frames disagree in size.
FrameSequence load_frame_sequence(const std::string& dir);

//! Writes frame_0001.png, frame_0002.png, ... into the directory (created if
//! missing), quantizing to 8-bit RGB.
void save_frame_sequence(const FrameSequence& seq, const std::string& dir);

//! Pure-quaternion encoding: entry (i1, i2, i3) = R*i + G*j + B*k.
QuaternionTensor<double> rgb_to_qtensor(const FrameSequence& seq);

//! Decoding: imaginary parts clamped to [0, 1] and quantized to the 8-bit
//! grid; the real part is discarded.
FrameSequence qtensor_to_rgb(const QuaternionTensor<double>& t);

//! Peak signal-to-noise ratio in dB over all pixels, channels, and frames
//! (MAX = 1). Identical inputs give +infinity.
double psnr(const FrameSequence& ref, const FrameSequence& test);

//! Mean SSIM over 8x8 sliding windows of one channel plane (MAX = 1,
//! stabilizers C1 = 0.01^2, C2 = 0.03^2).
double ssim_plane(const Eigen::MatrixXd& ref, const Eigen::MatrixXd& test);

//! Average structural similarity: per-frame mean of the three per-channel
//! SSIM values, then the mean over frames.
double assim(const FrameSequence& ref, const FrameSequence& test);

//! Raw quaternion tensor file ("QTNS"): 16-byte header then little-endian
//! doubles (w, x, y, z per entry) in storage order. Exact, unlike the frames.
void save_qtensor(const std::string& path, const QuaternionTensor<double>& t);
QuaternionTensor<double> load_qtensor(const std::string& path);

}  // namespace qtc

#include "qtc/media.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>

#include <png.h>

#include "qtc/errors.hpp"

namespace qtc {

namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// PNG I/O (8-bit RGB; RGBA/gray/palette inputs are normalized on read)

struct PngReadCloser {
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::FILE* file = nullptr;
  ~PngReadCloser() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (file) std::fclose(file);
  }
};

FrameSequence::Frame read_png(const std::string& path) {
  PngReadCloser ctx;
  ctx.file = std::fopen(path.c_str(), "rb");
  if (!ctx.file) throw IoError("cannot open " + path);
  ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) throw IoError("libpng init failed for " + path);
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw IoError("libpng init failed for " + path);
  if (setjmp(png_jmpbuf(ctx.png))) throw IoError("failed to decode " + path);

  png_init_io(ctx.png, ctx.file);
  png_read_info(ctx.png, ctx.info);
  png_set_expand(ctx.png);         // palette / gray / tRNS to full depth
  png_set_strip_16(ctx.png);       // 16-bit down to 8
  png_set_strip_alpha(ctx.png);
  png_set_gray_to_rgb(ctx.png);
  png_read_update_info(ctx.png, ctx.info);

  const png_uint_32 width = png_get_image_width(ctx.png, ctx.info);
  const png_uint_32 height = png_get_image_height(ctx.png, ctx.info);
  if (png_get_channels(ctx.png, ctx.info) != 3)
    throw IoError("unexpected channel count in " + path);

  std::vector<png_byte> row(static_cast<std::size_t>(width) * 3);
  FrameSequence::Frame frame{Eigen::MatrixXd(height, width), Eigen::MatrixXd(height, width),
                             Eigen::MatrixXd(height, width)};
  for (png_uint_32 i = 0; i < height; ++i) {
    png_read_row(ctx.png, row.data(), nullptr);
    for (png_uint_32 j = 0; j < width; ++j) {
      frame.r(i, j) = row[3 * j + 0] / 255.0;
      frame.g(i, j) = row[3 * j + 1] / 255.0;
      frame.b(i, j) = row[3 * j + 2] / 255.0;
    }
  }
  png_read_end(ctx.png, nullptr);
  return frame;
}

struct PngWriteCloser {
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::FILE* file = nullptr;
  ~PngWriteCloser() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    if (file) std::fclose(file);
  }
};

png_byte to_byte(double v) {
  const double clamped = std::clamp(v, 0.0, 1.0);
  return static_cast<png_byte>(std::lround(clamped * 255.0));
}

void write_png(const std::string& path, const FrameSequence::Frame& frame) {
  PngWriteCloser ctx;
  ctx.file = std::fopen(path.c_str(), "wb");
  if (!ctx.file) throw IoError("cannot write " + path);
  ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) throw IoError("libpng init failed for " + path);
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw IoError("libpng init failed for " + path);
  if (setjmp(png_jmpbuf(ctx.png))) throw IoError("failed to encode " + path);

  const auto height = static_cast<png_uint_32>(frame.r.rows());
  const auto width = static_cast<png_uint_32>(frame.r.cols());
  png_init_io(ctx.png, ctx.file);
  png_set_IHDR(ctx.png, ctx.info, width, height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(ctx.png, ctx.info);

  std::vector<png_byte> row(static_cast<std::size_t>(width) * 3);
  for (png_uint_32 i = 0; i < height; ++i) {
    for (png_uint_32 j = 0; j < width; ++j) {
      row[3 * j + 0] = to_byte(frame.r(i, j));
      row[3 * j + 1] = to_byte(frame.g(i, j));
      row[3 * j + 2] = to_byte(frame.b(i, j));
    }
    png_write_row(ctx.png, row.data());
  }
  png_write_end(ctx.png, ctx.info);
}

// ---------------------------------------------------------------------------
// little-endian scalar I/O for the binary container formats

template <typename T>
void put_le(std::ostream& os, T v) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
  unsigned char bytes[sizeof(T)];
  is.read(reinterpret_cast<char*>(bytes), sizeof(T));
  T v;
  std::memcpy(&v, bytes, sizeof(T));
  return v;
}

// 16-byte header shared by the QMSK and QTNS containers:
// magic[4] | u16 version | u16 I3 | u32 I1 | u32 I2
void write_header(std::ostream& os, const char magic[4], Eigen::Index i1, Eigen::Index i2,
                  Eigen::Index i3) {
  os.write(magic, 4);
  put_le<std::uint16_t>(os, 1);
  put_le<std::uint16_t>(os, static_cast<std::uint16_t>(i3));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(i1));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(i2));
}

struct Header {
  Eigen::Index i1, i2, i3;
};

Header read_header(std::istream& is, const char magic[4], const std::string& path) {
  char got[4];
  is.read(got, 4);
  if (!is || std::memcmp(got, magic, 4) != 0) throw IoError("bad magic in " + path);
  const auto version = get_le<std::uint16_t>(is);
  if (version != 1) throw IoError("unsupported version in " + path);
  Header h{};
  h.i3 = get_le<std::uint16_t>(is);
  h.i1 = get_le<std::uint32_t>(is);
  h.i2 = get_le<std::uint32_t>(is);
  if (!is || h.i1 < 1 || h.i2 < 1 || h.i3 < 1) throw IoError("bad dimensions in " + path);
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// frame sequences

FrameSequence FrameSequence::zeros(Eigen::Index height, Eigen::Index width, Eigen::Index count) {
  FrameSequence seq;
  seq.height = height;
  seq.width = width;
  seq.frames.assign(static_cast<std::size_t>(count),
                    Frame{Eigen::MatrixXd::Zero(height, width), Eigen::MatrixXd::Zero(height, width),
                          Eigen::MatrixXd::Zero(height, width)});
  return seq;
}

FrameSequence load_frame_sequence(const std::string& dir) {
  std::error_code ec;
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") paths.push_back(entry.path());
  }
  if (ec) throw IoError("cannot read directory " + dir);
  if (paths.empty()) throw IoError("no .png frames in " + dir);
  std::sort(paths.begin(), paths.end());

  FrameSequence seq;
  for (const auto& p : paths) {
    FrameSequence::Frame frame = read_png(p.string());
    if (seq.frames.empty()) {
      seq.height = frame.r.rows();
      seq.width = frame.r.cols();
    } else if (frame.r.rows() != seq.height || frame.r.cols() != seq.width) {
      throw IoError("frame size mismatch at " + p.string());
    }
    seq.frames.push_back(std::move(frame));
  }
  return seq;
}

void save_frame_sequence(const FrameSequence& seq, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir);
  char name[32];
  for (Eigen::Index f = 0; f < seq.frameCount(); ++f) {
    std::snprintf(name, sizeof(name), "frame_%04d.png", static_cast<int>(f + 1));
    write_png((fs::path(dir) / name).string(), seq.frames[static_cast<std::size_t>(f)]);
  }
}

// ---------------------------------------------------------------------------
// encoding

QuaternionTensor<double> rgb_to_qtensor(const FrameSequence& seq) {
  QuaternionTensor<double> t(seq.height, seq.width, seq.frameCount());
  for (Eigen::Index f = 0; f < seq.frameCount(); ++f) {
    const auto& frame = seq.frames[static_cast<std::size_t>(f)];
    auto& slice = t.slice(f);
    slice.p().imag() = frame.r;
    slice.q().real() = frame.g;
    slice.q().imag() = frame.b;
  }
  return t;
}

FrameSequence qtensor_to_rgb(const QuaternionTensor<double>& t) {
  FrameSequence seq = FrameSequence::zeros(t.rows(), t.cols(), t.depth());
  const auto quantize = [](double v) { return std::lround(std::clamp(v, 0.0, 1.0) * 255.0) / 255.0; };
  for (Eigen::Index f = 0; f < t.depth(); ++f) {
    const auto& slice = t.slice(f);
    auto& frame = seq.frames[static_cast<std::size_t>(f)];
    frame.r = slice.p().imag().unaryExpr(quantize);
    frame.g = slice.q().real().unaryExpr(quantize);
    frame.b = slice.q().imag().unaryExpr(quantize);
  }
  return seq;
}

// ---------------------------------------------------------------------------
// quality metrics

double psnr(const FrameSequence& ref, const FrameSequence& test) {
  if (!ref.sameShape(test)) throw DimensionMismatch("psnr: shapes differ");
  double se = 0;
  for (std::size_t f = 0; f < ref.frames.size(); ++f) {
    se += (ref.frames[f].r - test.frames[f].r).squaredNorm();
    se += (ref.frames[f].g - test.frames[f].g).squaredNorm();
    se += (ref.frames[f].b - test.frames[f].b).squaredNorm();
  }
  const double mse =
      se / (3.0 * static_cast<double>(ref.height * ref.width) * static_cast<double>(ref.frames.size()));
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

double ssim_plane(const Eigen::MatrixXd& ref, const Eigen::MatrixXd& test) {
  if (ref.rows() != test.rows() || ref.cols() != test.cols())
    throw DimensionMismatch("ssim_plane: shapes differ");
  const Eigen::Index win = std::min<Eigen::Index>({8, ref.rows(), ref.cols()});
  const double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
  const double n = static_cast<double>(win * win);

  // summed-area tables over x, y, x^2, y^2, xy; one extra zero row/column
  const auto sat = [](const Eigen::MatrixXd& m) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m.rows() + 1, m.cols() + 1);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        s(i + 1, j + 1) = m(i, j) + s(i, j + 1) + s(i + 1, j) - s(i, j);
    return s;
  };
  const Eigen::MatrixXd sx = sat(ref), sy = sat(test);
  const Eigen::MatrixXd sxx = sat(ref.cwiseProduct(ref)), syy = sat(test.cwiseProduct(test));
  const Eigen::MatrixXd sxy = sat(ref.cwiseProduct(test));
  const auto window_sum = [win](const Eigen::MatrixXd& s, Eigen::Index i, Eigen::Index j) {
    return s(i + win, j + win) - s(i, j + win) - s(i + win, j) + s(i, j);
  };

  double total = 0;
  Eigen::Index windows = 0;
  for (Eigen::Index i = 0; i + win <= ref.rows(); ++i)
    for (Eigen::Index j = 0; j + win <= ref.cols(); ++j) {
      const double mx = window_sum(sx, i, j) / n;
      const double my = window_sum(sy, i, j) / n;
      const double vx = window_sum(sxx, i, j) / n - mx * mx;
      const double vy = window_sum(syy, i, j) / n - my * my;
      const double cov = window_sum(sxy, i, j) / n - mx * my;
      total += ((2 * mx * my + c1) * (2 * cov + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
      ++windows;
    }
  return total / static_cast<double>(windows);
}

double assim(const FrameSequence& ref, const FrameSequence& test) {
  if (!ref.sameShape(test)) throw DimensionMismatch("assim: shapes differ");
  double total = 0;
  for (std::size_t f = 0; f < ref.frames.size(); ++f) {
    const double s = ssim_plane(ref.frames[f].r, test.frames[f].r) +
                     ssim_plane(ref.frames[f].g, test.frames[f].g) +
                     ssim_plane(ref.frames[f].b, test.frames[f].b);
    total += s / 3.0;
  }
  return total / static_cast<double>(ref.frames.size());
}

// ---------------------------------------------------------------------------
// mask container (QMSK)

void save_mask(const std::string& path, const MaskTensor& mask) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path);
  write_header(os, "QMSK", mask.dim(0), mask.dim(1), mask.dim(2));
  const auto& bits = mask.raw();
  put_le<std::uint8_t>(os, bits.empty() ? 0 : bits.front());
  std::size_t pos = 0;
  while (pos < bits.size()) {
    std::size_t run = 1;
    while (pos + run < bits.size() && bits[pos + run] == bits[pos]) ++run;
    // split runs that overflow the u32 payload
    std::size_t remaining = run;
    while (remaining > 0xFFFFFFFFull) {
      put_le<std::uint32_t>(os, 0xFFFFFFFFu);
      put_le<std::uint32_t>(os, 0);  // zero-length run keeps the parity
      remaining -= 0xFFFFFFFFull;
    }
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(remaining));
    pos += run;
  }
  if (!os) throw IoError("write failed for " + path);
}

MaskTensor load_mask(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  const Header h = read_header(is, "QMSK", path);
  MaskTensor mask(h.i1, h.i2, h.i3);
  auto& bits = mask.raw();
  std::uint8_t value = get_le<std::uint8_t>(is);
  std::size_t pos = 0;
  while (pos < bits.size()) {
    const auto run = get_le<std::uint32_t>(is);
    if (!is) throw IoError("truncated mask file " + path);
    if (pos + run > bits.size()) throw IoError("corrupt run length in " + path);
    std::fill_n(bits.begin() + static_cast<std::ptrdiff_t>(pos), run, value);
    pos += run;
    value = value ? 0 : 1;
  }
  return mask;
}

// ---------------------------------------------------------------------------
// raw tensor container (QTNS)

void save_qtensor(const std::string& path, const QuaternionTensor<double>& t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path);
  write_header(os, "QTNS", t.rows(), t.cols(), t.depth());
  for (Eigen::Index k = 0; k < t.depth(); ++k)
    for (Eigen::Index j = 0; j < t.cols(); ++j)
      for (Eigen::Index i = 0; i < t.rows(); ++i) {
        const Quaternion<double> v = t(i, j, k);
        put_le(os, v.w);
        put_le(os, v.x);
        put_le(os, v.y);
        put_le(os, v.z);
      }
  if (!os) throw IoError("write failed for " + path);
}

QuaternionTensor<double> load_qtensor(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  const Header h = read_header(is, "QTNS", path);
  QuaternionTensor<double> t(h.i1, h.i2, h.i3);
  for (Eigen::Index k = 0; k < h.i3; ++k)
    for (Eigen::Index j = 0; j < h.i2; ++j)
      for (Eigen::Index i = 0; i < h.i1; ++i) {
        Quaternion<double> v;
        v.w = get_le<double>(is);
        v.x = get_le<double>(is);
        v.y = get_le<double>(is);
        v.z = get_le<double>(is);
        t.set(i, j, k, v);
      }
  if (!is) throw IoError("truncated tensor file " + path);
  return t;
}

}  // namespace qtc

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace scenesplit {

inline constexpr int kMinFrameWidth = 9;
inline constexpr int kMinFrameHeight = 8;

/// One RGB24 image in a stream. Pixels are row-major RGB triples.
class Frame {
 public:
  /// Throws IngestError if the frame is smaller than 9x8 or the pixel buffer
  /// does not hold exactly width*height*3 bytes.
  Frame(std::size_t index, int width, int height, std::vector<std::uint8_t> pixels);

  std::size_t index() const noexcept { return index_; }
  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

  std::size_t byte_size() const noexcept { return pixels_.size(); }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::size_t index_;
  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

/// Pull-style frame producer. next() returns std::nullopt at end of stream
/// and throws IngestError on bad input.
class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual std::optional<Frame> next() = 0;
};

/// Frames from every .ppm/.pgm/.pnm file in a directory, in lexicographic
/// filename order. Other files are ignored.
class ImageSequenceSource final : public FrameSource {
 public:
  explicit ImageSequenceSource(const std::filesystem::path& directory);
  std::optional<Frame> next() override;

  const std::vector<std::filesystem::path>& files() const noexcept { return files_; }

 private:
  std::vector<std::filesystem::path> files_;
  std::size_t cursor_ = 0;
  int width_ = 0;
  int height_ = 0;
};

/// Packed RGB24 frames back to back, dimensions supplied out of band.
class RawStreamSource final : public FrameSource {
 public:
  RawStreamSource(std::istream& in, int width, int height);
  std::optional<Frame> next() override;

 private:
  std::istream* in_;
  int width_;
  int height_;
  std::size_t index_ = 0;
  std::size_t consumed_ = 0;
};

struct SynthSpec {
  int scene_count = 10;
  int frames_per_scene = 30;
  int width = 320;
  int height = 240;
  std::uint64_t rng_seed = 42;
  int noise_amplitude = 0;
  /// Consecutive scenes are re-drawn until their hashes differ by more
  /// than this many bits.
  int min_scene_distance = 5;

  std::size_t total_frames() const noexcept {
    return static_cast<std::size_t>(scene_count) * static_cast<std::size_t>(frames_per_scene);
  }

  /// Throws ContractError on out-of-range fields.
  void validate() const;
};

/// Deterministic synthetic video. Each scene is an 8x9 grid of seeded random
/// colors stretched over the frame with the same tiling the hash uses, so the
/// downsampled image of a noise-free frame is exactly the grid.
class SyntheticSource final : public FrameSource {
 public:
  explicit SyntheticSource(SynthSpec spec);
  std::optional<Frame> next() override;

  const SynthSpec& spec() const noexcept { return spec_; }

  /// Frame indices at which a new scene starts (excluding 0).
  std::vector<std::size_t> boundaries() const;

 private:
  void draw_scene();

  SynthSpec spec_;
  std::mt19937_64 engine_;
  std::vector<std::uint8_t> scene_pixels_;
  std::optional<std::uint64_t> previous_hash_;
  std::size_t index_ = 0;
};

std::vector<Frame> collect(FrameSource& source);

std::vector<Frame> read_image_sequence(const std::filesystem::path& directory);
std::vector<Frame> read_raw_stream(std::istream& in, int width, int height);
std::vector<Frame> generate_synthetic(const SynthSpec& spec);

/// Decodes a binary PPM (P6) or PGM (P5) image with maxval 255. PGM samples
/// are expanded to gray RGB. `name` is used in error messages.
Frame decode_pnm(std::span<const std::uint8_t> bytes, std::size_t index, const std::string& name);
Frame read_pnm_file(const std::filesystem::path& path, std::size_t index);

std::vector<std::uint8_t> encode_ppm(const Frame& frame);
/// Writes a P5 image from one gray byte per pixel.
std::vector<std::uint8_t> encode_pgm(int width, int height, std::span<const std::uint8_t> gray);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace scenesplit

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "scenesplit/frame.hpp"

namespace scenesplit {

inline constexpr int kGridRows = 8;
inline constexpr int kGridCols = 9;
inline constexpr int kGridCells = kGridRows * kGridCols;

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// 8 rows by 9 columns, row-major.
using RgbSubImage = std::array<Rgb, kGridCells>;
using GraySubImage = std::array<std::uint8_t, kGridCells>;

/// 64-bit difference hash. Row 0 is the most significant byte; within a row
/// the leftmost comparison is the most significant bit.
class FrameHash {
 public:
  constexpr FrameHash() noexcept = default;
  constexpr explicit FrameHash(std::uint64_t bits) noexcept : bits_(bits) {}

  constexpr std::uint64_t bits() const noexcept { return bits_; }

  /// 16 lowercase hex digits, zero padded.
  std::string hex() const;

  /// Accepts exactly 16 hex digits, either case, with an optional "0x".
  /// Throws ParseError otherwise.
  static FrameHash from_hex(std::string_view text);

  friend constexpr bool operator==(FrameHash, FrameHash) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Box-filter average over an exact integer tiling of the frame. Cell (r, c)
/// covers rows [r*H/8, (r+1)*H/8) and columns [c*W/9, (c+1)*W/9), per-channel
/// means rounded half up.
RgbSubImage downsample(const Frame& frame);

/// Rec. 709 luma, round(0.2126 R + 0.7152 G + 0.0722 B) with halves rounded up.
std::uint8_t luminosity(Rgb pixel) noexcept;
GraySubImage to_gray(const RgbSubImage& sub) noexcept;

/// Bit j of each row is 1 iff value[j] > value[j + 1].
FrameHash hash_rows(const GraySubImage& gray) noexcept;

FrameHash hash_frame(const Frame& frame);

int hamming(FrameHash a, FrameHash b) noexcept;

}  // namespace scenesplit

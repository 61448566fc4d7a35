#include <bit>
#include <charconv>

#include "scenesplit/dhash.hpp"
#include "scenesplit/error.hpp"

namespace scenesplit {

std::string FrameHash::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 0; i < 16; ++i) {
    out[15 - i] = kDigits[(bits_ >> (4 * i)) & 0xF];
  }
  return out;
}

FrameHash FrameHash::from_hex(std::string_view text) {
  if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
  if (text.size() != 16) {
    throw ParseError("hash must be 16 hex digits: '" + std::string(text) + "'");
  }
  std::uint64_t bits = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), bits, 16);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("invalid hex hash: '" + std::string(text) + "'");
  }
  return FrameHash(bits);
}

RgbSubImage downsample(const Frame& frame) {
  const int width = frame.width();
  const int height = frame.height();
  const auto pixels = frame.pixels();

  std::array<int, kGridCols + 1> col_edge{};
  for (int c = 0; c <= kGridCols; ++c) col_edge[c] = c * width / kGridCols;

  RgbSubImage out;
  for (int r = 0; r < kGridRows; ++r) {
    const int y0 = r * height / kGridRows;
    const int y1 = (r + 1) * height / kGridRows;
    std::array<std::uint64_t, kGridCols * 3> sums{};
    for (int y = y0; y < y1; ++y) {
      const std::uint8_t* row = pixels.data() + static_cast<std::size_t>(y) * width * 3;
      for (int c = 0; c < kGridCols; ++c) {
        std::uint32_t red = 0, green = 0, blue = 0;
        for (int x = col_edge[c]; x < col_edge[c + 1]; ++x) {
          red += row[3 * x];
          green += row[3 * x + 1];
          blue += row[3 * x + 2];
        }
        sums[3 * c] += red;
        sums[3 * c + 1] += green;
        sums[3 * c + 2] += blue;
      }
    }
    for (int c = 0; c < kGridCols; ++c) {
      const std::uint64_t count = static_cast<std::uint64_t>(y1 - y0) * static_cast<std::uint64_t>(col_edge[c + 1] - col_edge[c]);
      // Mean rounded half up: floor(sum / count + 1/2).
      auto mean = [count](std::uint64_t sum) {
        return static_cast<std::uint8_t>((2 * sum + count) / (2 * count));
      };
      out[r * kGridCols + c] = {mean(sums[3 * c]), mean(sums[3 * c + 1]), mean(sums[3 * c + 2])};
    }
  }
  return out;
}

std::uint8_t luminosity(Rgb pixel) noexcept {
  // Weights scaled by 10^4 so the rounding is exact.
  const std::uint32_t weighted = 2126u * pixel.r + 7152u * pixel.g + 722u * pixel.b;
  const std::uint32_t rounded = (weighted + 5000u) / 10000u;
  return static_cast<std::uint8_t>(rounded > 255u ? 255u : rounded);
}

GraySubImage to_gray(const RgbSubImage& sub) noexcept {
  GraySubImage gray;
  for (int i = 0; i < kGridCells; ++i) gray[i] = luminosity(sub[i]);
  return gray;
}

FrameHash hash_rows(const GraySubImage& gray) noexcept {
  std::uint64_t bits = 0;
  for (int r = 0; r < kGridRows; ++r) {
    const std::uint8_t* row = gray.data() + r * kGridCols;
    for (int j = 0; j < kGridCols - 1; ++j) {
      bits = (bits << 1) | (row[j] > row[j + 1] ? 1u : 0u);
    }
  }
  return FrameHash(bits);
}

FrameHash hash_frame(const Frame& frame) { return hash_rows(to_gray(downsample(frame))); }

int hamming(FrameHash a, FrameHash b) noexcept { return std::popcount(a.bits() ^ b.bits()); }

}  // namespace scenesplit

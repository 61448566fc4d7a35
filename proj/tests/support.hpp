#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scenesplit/cli.hpp"
#include "scenesplit/frame.hpp"

namespace scenesplit::testing {

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = std::filesystem::temp_directory_path() /
            ("scenesplit_test_" + std::to_string(stamp) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

inline CliResult run_cli(std::vector<std::string> args, const std::string& stdin_bytes = {}) {
  args.insert(args.begin(), "scenesplit");
  std::istringstream in(stdin_bytes);
  std::ostringstream out;
  std::ostringstream err;
  CliResult result;
  result.code = cli::run(args, in, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

inline Frame solid_frame(std::size_t index, int width, int height, std::uint8_t r, std::uint8_t g,
                         std::uint8_t b) {
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t i = 0; i < pixels.size(); i += 3) {
    pixels[i] = r;
    pixels[i + 1] = g;
    pixels[i + 2] = b;
  }
  return Frame(index, width, height, std::move(pixels));
}

/// Gray frame from one byte per pixel.
inline Frame gray_frame(std::size_t index, int width, int height,
                        const std::vector<std::uint8_t>& gray) {
  std::vector<std::uint8_t> pixels(gray.size() * 3);
  for (std::size_t i = 0; i < gray.size(); ++i) {
    pixels[3 * i] = pixels[3 * i + 1] = pixels[3 * i + 2] = gray[i];
  }
  return Frame(index, width, height, std::move(pixels));
}

inline Frame random_frame(std::mt19937_64& rng, std::size_t index, int width, int height) {
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) * height * 3);
  for (auto& p : pixels) p = static_cast<std::uint8_t>(rng() >> 56);
  return Frame(index, width, height, std::move(pixels));
}

/// 9x8 gray rows that hash to `bits`: each row starts at 100 and steps down
/// by one where the bit is set, up by one otherwise.
inline std::vector<std::uint8_t> rows_for_hash(std::uint64_t bits) {
  std::vector<std::uint8_t> gray(72);
  for (int r = 0; r < 8; ++r) {
    const auto byte = static_cast<std::uint8_t>(bits >> (8 * (7 - r)));
    int value = 100;
    gray[r * 9] = static_cast<std::uint8_t>(value);
    for (int j = 0; j < 8; ++j) {
      value += ((byte >> (7 - j)) & 1) ? -1 : 1;
      gray[r * 9 + j + 1] = static_cast<std::uint8_t>(value);
    }
  }
  return gray;
}

}  // namespace scenesplit::testing

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>
#include <utility>

#include "scenesplit/dhash.hpp"
#include "scenesplit/error.hpp"
#include "scenesplit/frame.hpp"

namespace fs = std::filesystem;

namespace scenesplit {

namespace {

std::string dims(int width, int height) {
  return std::to_string(width) + "x" + std::to_string(height);
}

void check_min_size(int width, int height) {
  if (width < kMinFrameWidth || height < kMinFrameHeight) {
    throw IngestError("frame below 9×8 minimum (got " + dims(width, height) + ")");
  }
}

bool is_pnm_path(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return ext == ".ppm" || ext == ".pgm" || ext == ".pnm";
}

// Minimal netpbm header tokenizer: whitespace separated, '#' starts a comment
// running to end of line.
class HeaderReader {
 public:
  HeaderReader(std::span<const std::uint8_t> bytes, const std::string& name)
      : bytes_(bytes), name_(name) {}

  long number() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw IngestError(name_ + ": malformed PNM header");
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000) throw IngestError(name_ + ": PNM dimension out of range");
      ++pos_;
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw IngestError(name_ + ": malformed PNM header");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  const std::string& name_;
  std::size_t pos_ = 2;
};

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot read " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IngestError("cannot read " + path.string());
  return bytes;
}

}  // namespace

Frame::Frame(std::size_t index, int width, int height, std::vector<std::uint8_t> pixels)
    : index_(index), width_(width), height_(height), pixels_(std::move(pixels)) {
  check_min_size(width, height);
  const auto expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
  if (pixels_.size() != expected) {
    throw IngestError("frame " + dims(width, height) + " needs " + std::to_string(expected) +
                      " bytes, got " + std::to_string(pixels_.size()));
  }
}

Frame decode_pnm(std::span<const std::uint8_t> bytes, std::size_t index, const std::string& name) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw IngestError(name + ": not a binary PPM (P6) or PGM (P5) image");
  }
  const bool color = bytes[1] == '6';
  HeaderReader header(bytes, name);
  const long width = header.number();
  const long height = header.number();
  const long maxval = header.number();
  if (maxval != 255) {
    throw IngestError(name + ": unsupported maxval " + std::to_string(maxval) + " (need 255)");
  }
  const std::size_t offset = header.raster_offset();
  try {
    check_min_size(static_cast<int>(width), static_cast<int>(height));
  } catch (const IngestError& e) {
    throw IngestError(name + ": " + e.what());
  }

  const auto pixel_count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const std::size_t raster = pixel_count * (color ? 3 : 1);
  if (bytes.size() - offset < raster) {
    throw IngestError(name + ": truncated raster (" + std::to_string(bytes.size() - offset) +
                      " of " + std::to_string(raster) + " bytes)");
  }
  const auto data = bytes.subspan(offset, raster);
  std::vector<std::uint8_t> pixels;
  if (color) {
    pixels.assign(data.begin(), data.end());
  } else {
    pixels.resize(pixel_count * 3);
    for (std::size_t i = 0; i < pixel_count; ++i) {
      pixels[3 * i] = pixels[3 * i + 1] = pixels[3 * i + 2] = data[i];
    }
  }
  return Frame(index, static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

Frame read_pnm_file(const fs::path& path, std::size_t index) {
  const auto bytes = read_bytes(path);
  return decode_pnm(bytes, index, path.string());
}

std::vector<std::uint8_t> encode_ppm(const Frame& frame) {
  const std::string header =
      "P6\n" + std::to_string(frame.width()) + " " + std::to_string(frame.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), frame.pixels().begin(), frame.pixels().end());
  return out;
}

std::vector<std::uint8_t> encode_pgm(int width, int height, std::span<const std::uint8_t> gray) {
  if (gray.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ContractError("PGM raster size does not match " + dims(width, height));
  }
  const std::string header =
      "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), gray.begin(), gray.end());
  return out;
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("cannot write " + path.string());
}

// --- ImageSequenceSource ---------------------------------------------------

ImageSequenceSource::ImageSequenceSource(const fs::path& directory) {
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) {
    throw IngestError("input directory not found: " + directory.string());
  }
  for (const auto& entry : fs::directory_iterator(directory, ec)) {
    if (entry.is_regular_file() && is_pnm_path(entry.path())) files_.push_back(entry.path());
  }
  if (ec) throw IngestError("cannot list " + directory.string() + ": " + ec.message());
  std::sort(files_.begin(), files_.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
}

std::optional<Frame> ImageSequenceSource::next() {
  if (cursor_ >= files_.size()) return std::nullopt;
  const std::size_t index = cursor_;
  Frame frame = read_pnm_file(files_[index], index);
  if (index == 0) {
    width_ = frame.width();
    height_ = frame.height();
  } else if (frame.width() != width_ || frame.height() != height_) {
    throw IngestError("dimension mismatch: " + files_[0].string() + " is " + dims(width_, height_) +
                      " but " + files_[index].string() + " is " +
                      dims(frame.width(), frame.height()));
  }
  ++cursor_;
  return frame;
}

// --- RawStreamSource -------------------------------------------------------

RawStreamSource::RawStreamSource(std::istream& in, int width, int height)
    : in_(&in), width_(width), height_(height) {
  check_min_size(width, height);
}

std::optional<Frame> RawStreamSource::next() {
  const auto frame_bytes = static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_) * 3;
  std::vector<std::uint8_t> pixels(frame_bytes);
  in_->read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(frame_bytes));
  const auto got = static_cast<std::size_t>(in_->gcount());
  if (got == 0) return std::nullopt;
  if (got < frame_bytes) {
    throw IngestError("raw stream ended with " + std::to_string(got) + " trailing bytes after " +
                      std::to_string(consumed_) + " bytes consumed (frame size " +
                      std::to_string(frame_bytes) + " bytes)");
  }
  consumed_ += got;
  return Frame(index_++, width_, height_, std::move(pixels));
}

// --- SyntheticSource -------------------------------------------------------

void SynthSpec::validate() const {
  if (scene_count < 1) throw ContractError("scene_count must be positive");
  if (frames_per_scene < 1) throw ContractError("frames_per_scene must be positive");
  if (width < kMinFrameWidth || height < kMinFrameHeight) {
    throw ContractError("synthetic frame below 9×8 minimum (got " + dims(width, height) + ")");
  }
  if (noise_amplitude < 0 || noise_amplitude > 255) {
    throw ContractError("noise_amplitude must be within [0, 255]");
  }
  if (min_scene_distance < 0 || min_scene_distance > 63) {
    throw ContractError("min_scene_distance must be within [0, 63]");
  }
}

SyntheticSource::SyntheticSource(SynthSpec spec) : spec_(spec), engine_(spec.rng_seed) {
  spec_.validate();
}

void SyntheticSource::draw_scene() {
  RgbSubImage grid;
  FrameHash hash;
  do {
    for (int i = 0; i < kGridCells; i += 2) {
      // One draw yields two colors.
      const std::uint64_t word = engine_();
      grid[i] = {static_cast<std::uint8_t>(word), static_cast<std::uint8_t>(word >> 8),
                 static_cast<std::uint8_t>(word >> 16)};
      grid[i + 1] = {static_cast<std::uint8_t>(word >> 24), static_cast<std::uint8_t>(word >> 32),
                     static_cast<std::uint8_t>(word >> 40)};
    }
    hash = hash_rows(to_gray(grid));
  } while (previous_hash_ &&
           hamming(hash, FrameHash(*previous_hash_)) <= spec_.min_scene_distance);
  previous_hash_ = hash.bits();

  const int w = spec_.width;
  const int h = spec_.height;
  scene_pixels_.assign(static_cast<std::size_t>(w) * h * 3, 0);
  for (int r = 0; r < kGridRows; ++r) {
    for (int y = r * h / kGridRows; y < (r + 1) * h / kGridRows; ++y) {
      for (int c = 0; c < kGridCols; ++c) {
        const Rgb color = grid[r * kGridCols + c];
        for (int x = c * w / kGridCols; x < (c + 1) * w / kGridCols; ++x) {
          auto* px = &scene_pixels_[(static_cast<std::size_t>(y) * w + x) * 3];
          px[0] = color.r;
          px[1] = color.g;
          px[2] = color.b;
        }
      }
    }
  }
}

std::optional<Frame> SyntheticSource::next() {
  if (index_ >= spec_.total_frames()) return std::nullopt;
  if (index_ % static_cast<std::size_t>(spec_.frames_per_scene) == 0) draw_scene();

  std::vector<std::uint8_t> pixels = scene_pixels_;
  if (spec_.noise_amplitude > 0) {
    const auto span = static_cast<std::uint64_t>(2 * spec_.noise_amplitude + 1);
    for (auto& value : pixels) {
      const int jitter = static_cast<int>(engine_() % span) - spec_.noise_amplitude;
      value = static_cast<std::uint8_t>(std::clamp(value + jitter, 0, 255));
    }
  }
  return Frame(index_++, spec_.width, spec_.height, std::move(pixels));
}

std::vector<std::size_t> SyntheticSource::boundaries() const {
  std::vector<std::size_t> out;
  for (int s = 1; s < spec_.scene_count; ++s) {
    out.push_back(static_cast<std::size_t>(s) * static_cast<std::size_t>(spec_.frames_per_scene));
  }
  return out;
}

// --- helpers ---------------------------------------------------------------

std::vector<Frame> collect(FrameSource& source) {
  std::vector<Frame> frames;
  while (auto frame = source.next()) frames.push_back(std::move(*frame));
  return frames;
}

std::vector<Frame> read_image_sequence(const fs::path& directory) {
  ImageSequenceSource source(directory);
  return collect(source);
}

std::vector<Frame> read_raw_stream(std::istream& in, int width, int height) {
  RawStreamSource source(in, width, height);
  return collect(source);
}

std::vector<Frame> generate_synthetic(const SynthSpec& spec) {
  SyntheticSource source(spec);
  return collect(source);
}

}  // namespace scenesplit

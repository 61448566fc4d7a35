#include <doctest.h>

#include <random>
#include <sstream>

#include "scenesplit/dhash.hpp"
#include "scenesplit/error.hpp"
#include "scenesplit/frame.hpp"
#include "scenesplit/segmenter.hpp"
#include "support.hpp"

using namespace scenesplit;
using scenesplit::testing::random_frame;
using scenesplit::testing::solid_frame;
using scenesplit::testing::TempDir;

namespace {

std::string bytes_of(const Frame& frame) {
  return {reinterpret_cast<const char*>(frame.pixels().data()), frame.byte_size()};
}

}  // namespace

TEST_CASE("Frame enforces its invariants") {
  CHECK_NOTHROW(Frame(0, 9, 8, std::vector<std::uint8_t>(9 * 8 * 3)));
  CHECK_THROWS_WITH_AS(Frame(0, 8, 8, std::vector<std::uint8_t>(8 * 8 * 3)),
                       doctest::Contains("below 9×8 minimum"), IngestError);
  CHECK_THROWS_AS(Frame(0, 9, 7, std::vector<std::uint8_t>(9 * 7 * 3)), IngestError);
  CHECK_THROWS_AS(Frame(0, 9, 8, std::vector<std::uint8_t>(10)), IngestError);
}

TEST_CASE("image sequence reads PNM files in filename order") {
  TempDir dir;
  write_file(dir / "b.ppm", encode_ppm(solid_frame(0, 320, 240, 1, 2, 3)));
  write_file(dir / "a.ppm", encode_ppm(solid_frame(0, 320, 240, 4, 5, 6)));
  write_file(dir / "c.PPM", encode_ppm(solid_frame(0, 320, 240, 7, 8, 9)));
  testing::spit(dir / "notes.txt", "ignored");

  const auto frames = read_image_sequence(dir.path());
  REQUIRE(frames.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(frames[i].index() == i);
    CHECK(frames[i].width() == 320);
  }
  CHECK(frames[0].pixels()[0] == 4);
  CHECK(frames[1].pixels()[0] == 1);
  CHECK(frames[2].pixels()[0] == 7);
}

TEST_CASE("image sequence edge cases") {
  SUBCASE("empty directory yields no frames") {
    TempDir dir;
    CHECK(read_image_sequence(dir.path()).empty());
  }
  SUBCASE("missing directory is named") {
    CHECK_THROWS_WITH_AS(read_image_sequence("/nonexistent/frames"),
                         doctest::Contains("/nonexistent/frames"), IngestError);
  }
  SUBCASE("undersized frame") {
    TempDir dir;
    std::string pgm = "P5\n8 8\n255\n" + std::string(64, '\x10');
    testing::spit(dir / "small.pgm", pgm);
    CHECK_THROWS_WITH_AS(read_image_sequence(dir.path()), doctest::Contains("below 9×8 minimum"),
                         IngestError);
  }
  SUBCASE("dimension mismatch names both files") {
    TempDir dir;
    write_file(dir / "0.ppm", encode_ppm(solid_frame(0, 10, 8, 0, 0, 0)));
    write_file(dir / "1.ppm", encode_ppm(solid_frame(0, 11, 8, 0, 0, 0)));
    try {
      read_image_sequence(dir.path());
      FAIL("expected an error");
    } catch (const IngestError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("0.ppm") != std::string::npos);
      CHECK(msg.find("1.ppm") != std::string::npos);
    }
  }
  SUBCASE("unreadable file is named") {
    TempDir dir;
    testing::spit(dir / "broken.ppm", "P3\n9 8\n255\n");
    CHECK_THROWS_WITH_AS(read_image_sequence(dir.path()), doctest::Contains("broken.ppm"),
                         IngestError);
  }
}

TEST_CASE("PNM decoding") {
  SUBCASE("P5 expands to gray RGB") {
    std::string raster(72, '\0');
    for (int i = 0; i < 72; ++i) raster[i] = static_cast<char>(i);
    const std::string text = "P5\n# comment line\n9 8\n255\n" + raster;
    const Frame f = decode_pnm({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()}, 4, "x");
    CHECK(f.index() == 4);
    CHECK(f.pixels()[3 * 10] == 10);
    CHECK(f.pixels()[3 * 10 + 1] == 10);
    CHECK(f.pixels()[3 * 10 + 2] == 10);
  }
  SUBCASE("PPM round trip is bit exact") {
    std::mt19937_64 rng(1);
    const Frame f = random_frame(rng, 0, 31, 17);
    const auto bytes = encode_ppm(f);
    CHECK(decode_pnm(bytes, 0, "x") == f);
  }
  SUBCASE("maxval other than 255 is rejected") {
    const std::string text = "P5 9 8 65535\n" + std::string(144, '\0');
    CHECK_THROWS_WITH_AS(decode_pnm({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()}, 0, "x"),
                         doctest::Contains("maxval"), IngestError);
  }
  SUBCASE("truncated raster") {
    const std::string text = "P6 9 8 255\n" + std::string(100, '\0');
    CHECK_THROWS_WITH_AS(decode_pnm({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()}, 0, "x"),
                         doctest::Contains("truncated"), IngestError);
  }
}

TEST_CASE("raw stream framing") {
  SUBCASE("width below minimum") {
    std::istringstream in(std::string(2 * 96, '\0'));
    CHECK_THROWS_AS(read_raw_stream(in, 4, 8), IngestError);
  }
  SUBCASE("exact multiple") {
    std::istringstream in(std::string(2 * 216, '\x05'));
    const auto frames = read_raw_stream(in, 9, 8);
    REQUIRE(frames.size() == 2);
    CHECK(frames[1].index() == 1);
  }
  SUBCASE("trailing partial frame after two good frames") {
    std::istringstream in(std::string(500, '\x05'));
    RawStreamSource source(in, 9, 8);
    CHECK(source.next().has_value());
    CHECK(source.next().has_value());
    try {
      source.next();
      FAIL("expected an error");
    } catch (const IngestError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("68 trailing bytes") != std::string::npos);
      CHECK(msg.find("432 bytes consumed") != std::string::npos);
    }
  }
  SUBCASE("empty input yields no frames") {
    std::istringstream in;
    CHECK(read_raw_stream(in, 9, 8).empty());
  }
}

TEST_CASE("raw stream round trip on random frames") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const int w = 9 + static_cast<int>(rng() % 20);
    const int h = 8 + static_cast<int>(rng() % 20);
    const Frame f1 = random_frame(rng, 0, w, h);
    const Frame f2 = random_frame(rng, 1, w, h);
    std::istringstream in(bytes_of(f1) + bytes_of(f2));
    const auto frames = read_raw_stream(in, w, h);
    REQUIRE(frames.size() == 2);
    CHECK(frames[0] == f1);
    CHECK(frames[1] == f2);
  }
}

TEST_CASE("synthetic generator") {
  SUBCASE("one noise-free scene is identical frames") {
    const auto frames = generate_synthetic({.scene_count = 1, .frames_per_scene = 3, .width = 40, .height = 30});
    REQUIRE(frames.size() == 3);
    CHECK(frames[0].pixels().size() == frames[1].pixels().size());
    CHECK(std::equal(frames[0].pixels().begin(), frames[0].pixels().end(), frames[2].pixels().begin()));
  }
  SUBCASE("ten scenes of thirty frames have nine detectable boundaries") {
    const SynthSpec spec{.scene_count = 10, .frames_per_scene = 30, .width = 64, .height = 48};
    SyntheticSource source(spec);
    CHECK(source.boundaries() == std::vector<std::size_t>{30, 60, 90, 120, 150, 180, 210, 240, 270});
    const auto frames = collect(source);
    REQUIRE(frames.size() == 300);
    std::size_t cuts = 0;
    for (std::size_t i = 1; i < frames.size(); ++i) {
      const int d = hamming(hash_frame(frames[i - 1]), hash_frame(frames[i]));
      if (i % 30 == 0) {
        CHECK(d > 5);
        ++cuts;
      } else {
        CHECK(d == 0);
      }
    }
    CHECK(cuts == 9);
  }
  SUBCASE("same spec gives byte-identical streams") {
    const SynthSpec spec{.scene_count = 4, .frames_per_scene = 3, .width = 33, .height = 21,
                         .rng_seed = 1234, .noise_amplitude = 9};
    CHECK(generate_synthetic(spec) == generate_synthetic(spec));
    SynthSpec other = spec;
    other.rng_seed = 1235;
    CHECK(generate_synthetic(spec) != generate_synthetic(other));
  }
  SUBCASE("noise stays within amplitude of the clean frame") {
    SynthSpec clean{.scene_count = 1, .frames_per_scene = 1, .width = 20, .height = 10, .rng_seed = 8};
    SynthSpec noisy = clean;
    noisy.noise_amplitude = 3;
    const auto a = generate_synthetic(clean)[0];
    const auto b = generate_synthetic(noisy)[0];
    for (std::size_t i = 0; i < a.byte_size(); ++i) {
      REQUIRE(std::abs(int(a.pixels()[i]) - int(b.pixels()[i])) <= 3);
    }
  }
  SUBCASE("invalid specs are rejected") {
    CHECK_THROWS_AS(SyntheticSource({.scene_count = 0}), ContractError);
    CHECK_THROWS_AS(SyntheticSource({.frames_per_scene = 0}), ContractError);
    CHECK_THROWS_AS(SyntheticSource({.width = 8}), ContractError);
    CHECK_THROWS_AS(SyntheticSource({.noise_amplitude = 256}), ContractError);
  }
}

TEST_CASE("every synthetic frame satisfies the frame invariants") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    SynthSpec spec;
    spec.scene_count = 1 + static_cast<int>(rng() % 3);
    spec.frames_per_scene = 1 + static_cast<int>(rng() % 3);
    spec.width = 9 + static_cast<int>(rng() % 24);
    spec.height = 8 + static_cast<int>(rng() % 24);
    spec.rng_seed = rng();
    spec.noise_amplitude = static_cast<int>(rng() % 256);
    const auto frames = generate_synthetic(spec);
    REQUIRE(frames.size() == spec.total_frames());
    for (std::size_t i = 0; i < frames.size(); ++i) {
      REQUIRE(frames[i].index() == i);
      REQUIRE(frames[i].width() == spec.width);
      REQUIRE(frames[i].height() == spec.height);
      REQUIRE(frames[i].byte_size() == static_cast<std::size_t>(spec.width) * spec.height * 3);
    }
  }
}

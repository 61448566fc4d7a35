#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "scenesplit/error.hpp"
#include "scenesplit/segmenter.hpp"

using namespace scenesplit;

namespace {

// Hash stream whose adjacent distances are exactly `distances`.
std::vector<FrameHash> stream_with_distances(const std::vector<int>& distances) {
  std::vector<FrameHash> hashes{FrameHash(0)};
  for (const int d : distances) {
    const std::uint64_t flip = d == 64 ? ~0ULL : ((1ULL << d) - 1);
    hashes.emplace_back(hashes.back().bits() ^ flip);
  }
  return hashes;
}

std::vector<std::pair<std::size_t, std::size_t>> spans(const std::vector<Scene>& scenes) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& s : scenes) out.emplace_back(s.start_frame, s.end_frame);
  return out;
}

}  // namespace

TEST_CASE("identical hashes never split before flush") {
  Segmenter seg;
  for (std::size_t i = 0; i < 50; ++i) CHECK_FALSE(seg.push_frame(FrameHash(0xabc), i).has_value());
  const Scene s = seg.flush();
  CHECK(s.scene_id == 0);
  CHECK(s.start_frame == 0);
  CHECK(s.end_frame == 49);
  CHECK(s.length() == 50);
}

TEST_CASE("alternating complement hashes split every frame") {
  std::vector<FrameHash> hashes;
  for (int i = 0; i < 6; ++i) hashes.emplace_back(i % 2 ? ~0ULL : 0ULL);
  const auto scenes = segment_hashes(hashes, {5});
  REQUIRE(scenes.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(scenes[i].scene_id == i);
    CHECK(scenes[i].start_frame == i);
    CHECK(scenes[i].end_frame == i);
  }
}

TEST_CASE("distances 3, 7, 2 at threshold 5 split between frames 1 and 2") {
  const auto hashes = stream_with_distances({3, 7, 2});
  Segmenter seg({5});
  CHECK_FALSE(seg.push_frame(hashes[0], 0));
  CHECK_FALSE(seg.push_frame(hashes[1], 1));
  const auto closed = seg.push_frame(hashes[2], 2);
  REQUIRE(closed.has_value());
  CHECK(closed->start_frame == 0);
  CHECK(closed->end_frame == 1);
  CHECK_FALSE(seg.push_frame(hashes[3], 3));
  const Scene last = seg.flush();
  CHECK(last.scene_id == 1);
  CHECK(last.start_frame == 2);
  CHECK(last.end_frame == 3);
}

TEST_CASE("distance equal to the threshold does not split") {
  CHECK(segment_hashes(stream_with_distances({5}), {5}).size() == 1);
  CHECK(segment_hashes(stream_with_distances({6}), {5}).size() == 2);
}

TEST_CASE("segmenter contract errors") {
  SUBCASE("non-consecutive index") {
    Segmenter seg;
    seg.push_frame(FrameHash(0), 0);
    CHECK_THROWS_AS(seg.push_frame(FrameHash(0), 2), ContractError);
  }
  SUBCASE("must start at zero") {
    Segmenter seg;
    CHECK_THROWS_AS(seg.push_frame(FrameHash(0), 1), ContractError);
  }
  SUBCASE("flush on empty stream") {
    Segmenter seg;
    CHECK_THROWS_WITH_AS(seg.flush(), "empty stream", ContractError);
  }
  SUBCASE("single frame, then a second flush fails") {
    Segmenter seg;
    seg.push_frame(FrameHash(1), 0);
    const Scene s = seg.flush();
    CHECK(s.start_frame == 0);
    CHECK(s.end_frame == 0);
    CHECK_THROWS_AS(seg.flush(), ContractError);
  }
  SUBCASE("threshold range") {
    CHECK_THROWS_AS(Segmenter({-1}), ContractError);
    CHECK_THROWS_AS(Segmenter({65}), ContractError);
  }
}

TEST_CASE("threshold 64 always yields one scene") {
  std::mt19937_64 rng(4);
  std::vector<FrameHash> hashes;
  for (int i = 0; i < 200; ++i) hashes.emplace_back(rng());
  hashes.emplace_back(~hashes.back().bits());
  CHECK(segment_hashes(hashes, {64}).size() == 1);
}

TEST_CASE("segment_stream over a synthetic corpus") {
  SyntheticSource source({.scene_count = 10, .frames_per_scene = 30, .width = 48, .height = 32});
  const auto scenes = segment_stream(source, {5});
  REQUIRE(scenes.size() == 10);
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    CHECK(scenes[i].start_frame == 30 * i);
    CHECK(scenes[i].end_frame == 30 * i + 29);
  }
  CHECK(scene_boundaries(scenes) == std::vector<std::size_t>{30, 60, 90, 120, 150, 180, 210, 240, 270});
}

TEST_CASE("segment_stream on a single frame and on nothing") {
  SyntheticSource one({.scene_count = 1, .frames_per_scene = 1, .width = 9, .height = 8});
  const auto scenes = segment_stream(one, {});
  REQUIRE(scenes.size() == 1);
  CHECK(scenes[0].end_frame == 0);

  SyntheticSource none({.scene_count = 1, .frames_per_scene = 1, .width = 9, .height = 8});
  none.next();
  CHECK_THROWS_AS(segment_stream(none, {}), ContractError);
}

TEST_CASE("streaming equals the offline split, with partition and monotonicity") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 500;
    std::vector<std::uint64_t> raw{rng()};
    for (std::size_t i = 1; i < n; ++i) {
      // Mostly small perturbations so both outcomes are common.
      std::uint64_t h = raw.back();
      const int flips = static_cast<int>(rng() % 12);
      for (int f = 0; f < flips; ++f) h ^= 1ULL << (rng() % 64);
      raw.push_back(h);
    }
    std::vector<FrameHash> hashes(raw.begin(), raw.end());
    const int threshold = static_cast<int>(rng() % 65);

    const auto scenes = segment_hashes(hashes, {threshold});
    REQUIRE(spans(scenes) == oracle::split(raw, threshold));

    std::size_t expected_start = 0;
    for (std::size_t i = 0; i < scenes.size(); ++i) {
      REQUIRE(scenes[i].scene_id == i);
      REQUIRE(scenes[i].start_frame == expected_start);
      REQUIRE(scenes[i].end_frame >= scenes[i].start_frame);
      expected_start = scenes[i].end_frame + 1;
    }
    REQUIRE(expected_start == n);

    const int higher = threshold + static_cast<int>(rng() % (65 - threshold));
    REQUIRE(segment_hashes(hashes, {higher}).size() <= scenes.size());
  }
}

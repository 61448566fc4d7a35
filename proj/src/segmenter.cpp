#include <string>

#include "scenesplit/error.hpp"
#include "scenesplit/segmenter.hpp"

namespace scenesplit {

void SegmenterConfig::validate() const {
  if (threshold < 0 || threshold > 64) {
    throw ContractError("threshold must be within [0, 64], got " + std::to_string(threshold));
  }
}

Segmenter::Segmenter(SegmenterConfig config) : config_(config) { config_.validate(); }

std::optional<Scene> Segmenter::push_frame(FrameHash hash, std::size_t frame_index) {
  if (frame_index != next_index_) {
    throw ContractError("expected frame index " + std::to_string(next_index_) + ", got " +
                        std::to_string(frame_index));
  }
  ++next_index_;

  std::optional<Scene> closed;
  if (previous_) {
    const int distance = hamming(*previous_, hash);
    last_distance_ = distance;
    if (distance > config_.threshold) {
      closed = Scene{scene_counter_++, open_start_, frame_index - 1, std::nullopt};
      open_start_ = frame_index;
    }
  }
  previous_ = hash;
  return closed;
}

Scene Segmenter::flush() {
  if (!previous_) throw ContractError("empty stream");
  Scene last{scene_counter_, open_start_, next_index_ - 1, std::nullopt};
  *this = Segmenter(config_);
  return last;
}

std::vector<Scene> segment_hashes(std::span<const FrameHash> hashes, const SegmenterConfig& config) {
  Segmenter segmenter(config);
  std::vector<Scene> scenes;
  for (std::size_t i = 0; i < hashes.size(); ++i) {
    if (auto scene = segmenter.push_frame(hashes[i], i)) scenes.push_back(std::move(*scene));
  }
  scenes.push_back(segmenter.flush());
  return scenes;
}

std::vector<Scene> segment_stream(FrameSource& frames, const SegmenterConfig& config) {
  Segmenter segmenter(config);
  std::vector<Scene> scenes;
  while (auto frame = frames.next()) {
    if (auto scene = segmenter.push_frame(hash_frame(*frame), frame->index())) {
      scenes.push_back(std::move(*scene));
    }
  }
  scenes.push_back(segmenter.flush());
  return scenes;
}

std::vector<std::size_t> scene_boundaries(std::span<const Scene> scenes) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < scenes.size(); ++i) out.push_back(scenes[i].start_frame);
  return out;
}

}  // namespace scenesplit

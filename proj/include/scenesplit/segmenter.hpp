#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "scenesplit/dhash.hpp"
#include "scenesplit/frame.hpp"
#include "scenesplit/record.hpp"

namespace scenesplit {

struct Scene {
  std::size_t scene_id = 0;
  std::size_t start_frame = 0;
  std::size_t end_frame = 0;
  std::optional<RecognitionRecord> representative;

  std::size_t length() const noexcept { return end_frame - start_frame + 1; }

  friend bool operator==(const Scene&, const Scene&) = default;
};

struct SegmenterConfig {
  /// A boundary is emitted when the distance is strictly greater than this.
  int threshold = 5;

  void validate() const;
};

/// Streaming scene separator. Holds the previous hash, the open scene's start
/// and a scene counter, nothing else.
class Segmenter {
 public:
  explicit Segmenter(SegmenterConfig config = {});

  /// Feeds the hash of frame `frame_index`. Indices must be 0, 1, 2, ...
  /// Returns the scene that just closed, if the distance to the previous
  /// frame exceeded the threshold.
  std::optional<Scene> push_frame(FrameHash hash, std::size_t frame_index);

  /// Closes the open scene at the last pushed frame and resets to an empty
  /// stream. Throws ContractError("empty stream") if nothing was pushed.
  Scene flush();

  /// Distance between the last two pushed hashes, if at least two were pushed.
  std::optional<int> last_distance() const noexcept { return last_distance_; }
  std::size_t frames_pushed() const noexcept { return next_index_; }
  const SegmenterConfig& config() const noexcept { return config_; }

 private:
  SegmenterConfig config_;
  std::optional<FrameHash> previous_;
  std::optional<int> last_distance_;
  std::size_t next_index_ = 0;
  std::size_t open_start_ = 0;
  std::size_t scene_counter_ = 0;
};

std::vector<Scene> segment_hashes(std::span<const FrameHash> hashes, const SegmenterConfig& config);
/// Hashes and segments the whole source. Throws ContractError on an empty stream.
std::vector<Scene> segment_stream(FrameSource& frames, const SegmenterConfig& config);

/// Start frames of every scene after the first.
std::vector<std::size_t> scene_boundaries(std::span<const Scene> scenes);

}  // namespace scenesplit

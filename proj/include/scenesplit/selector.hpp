#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scenesplit/record.hpp"
#include "scenesplit/segmenter.hpp"

namespace scenesplit {

struct SelectorConfig {
  /// Records per smoothing group; the last group of a scene may be shorter.
  std::size_t group_size = 5;
  /// Per-record weight is weight_factor * L (or * F during selection).
  double weight_factor = 0.1;

  void validate() const;
};

/// Length-weighted average length of a group: sum(L * w) / sum(w) with
/// w = weight_factor * L. Zero when every record is empty.
double weighted_average_length(std::span<const RecognitionRecord> group, double weight_factor = 0.1);

/// Same weighting applied to feature intensity (distinct label count).
double weighted_average_intensity(std::span<const RecognitionRecord> candidates,
                                  double weight_factor = 0.1);

/// Record whose length is closest to the group's weighted average length.
/// Ties go to the earliest frame. Throws ContractError on an empty group.
const RecognitionRecord& smooth_group(std::span<const RecognitionRecord> group);

/// One candidate per consecutive group of `group_size` records, in order.
std::vector<RecognitionRecord> smooth_scene(std::span<const RecognitionRecord> records,
                                            const SelectorConfig& config);

/// Candidate whose feature intensity is closest to the weighted average
/// intensity. Ties go to the earliest frame. Throws ContractError when
/// `candidates` is empty.
const RecognitionRecord& select_representative(std::span<const RecognitionRecord> candidates,
                                               const SelectorConfig& config);

/// Fills each scene's representative from the records inside its frame range.
/// Records must be strictly increasing by frame and lie within the scenes.
std::vector<Scene> annotate_scenes(std::vector<Scene> scenes,
                                   std::span<const RecognitionRecord> records,
                                   const SelectorConfig& config);

/// Streaming counterpart of annotate_scenes: accepts records in frame order
/// and scenes as they close, holding only the records of the scene being
/// filled.
class SceneAnnotator {
 public:
  explicit SceneAnnotator(SelectorConfig config = {});

  /// Records must arrive strictly increasing by frame.
  void add_record(RecognitionRecord record);

  /// Frame index of the most recently added record, if any.
  std::optional<std::size_t> last_record_frame() const noexcept { return last_frame_; }

  /// Assigns the representative of `scene` from buffered records with
  /// frame <= scene.end_frame and drops them. Scenes must be contiguous.
  void annotate(Scene& scene);

  /// Throws ContractError if records remain past the last annotated scene.
  void finish() const;

 private:
  SelectorConfig config_;
  std::vector<RecognitionRecord> pending_;
  std::optional<std::size_t> last_frame_;
  std::size_t next_scene_start_ = 0;
};

}  // namespace scenesplit

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>

#include "scenesplit/error.hpp"
#include "scenesplit/selector.hpp"

namespace scenesplit {

std::size_t RecognitionRecord::feature_intensity() const {
  return std::set<std::string_view>(labels.begin(), labels.end()).size();
}

void SelectorConfig::validate() const {
  if (group_size < 1) throw ContractError("group_size must be at least 1");
  if (!(weight_factor > 0.0)) throw ContractError("weight_factor must be positive");
}

namespace {

template <typename Key>
double weighted_average(std::span<const RecognitionRecord> records, double weight_factor, Key key) {
  if (!(weight_factor > 0.0)) throw ContractError("weight_factor must be positive");
  double weighted = 0.0;
  double total_weight = 0.0;
  for (const auto& record : records) {
    const auto value = static_cast<double>(key(record));
    const double weight = weight_factor * value;
    weighted += value * weight;
    total_weight += weight;
  }
  return total_weight == 0.0 ? 0.0 : weighted / total_weight;
}

// argmin |v_i - sum(v^2)/sum(v)|, evaluated as |v_i * sum(v) - sum(v^2)| so
// the comparison is exact and independent of the weight factor, which
// cancels out of the weighted mean.
template <typename Key>
const RecognitionRecord& closest_to_weighted_mean(std::span<const RecognitionRecord> records,
                                                  Key key) {
  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;
  for (const auto& record : records) {
    const auto v = static_cast<std::int64_t>(key(record));
    sum += v;
    sum_sq += v * v;
  }
  const RecognitionRecord* best = nullptr;
  std::int64_t best_gap = 0;
  for (const auto& record : records) {
    const auto v = static_cast<std::int64_t>(key(record));
    const std::int64_t diff = v * sum - sum_sq;
    const std::int64_t gap = diff < 0 ? -diff : diff;
    if (best == nullptr || gap < best_gap ||
        (gap == best_gap && record.frame_index < best->frame_index)) {
      best = &record;
      best_gap = gap;
    }
  }
  return *best;
}

constexpr auto kLength = [](const RecognitionRecord& r) { return r.length(); };
constexpr auto kIntensity = [](const RecognitionRecord& r) { return r.feature_intensity(); };

}  // namespace

double weighted_average_length(std::span<const RecognitionRecord> group, double weight_factor) {
  if (group.empty()) throw ContractError("empty group");
  return weighted_average(group, weight_factor, kLength);
}

double weighted_average_intensity(std::span<const RecognitionRecord> candidates,
                                  double weight_factor) {
  if (candidates.empty()) throw ContractError("scene has no detections");
  return weighted_average(candidates, weight_factor, kIntensity);
}

const RecognitionRecord& smooth_group(std::span<const RecognitionRecord> group) {
  if (group.empty()) throw ContractError("empty group");
  return closest_to_weighted_mean(group, kLength);
}

std::vector<RecognitionRecord> smooth_scene(std::span<const RecognitionRecord> records,
                                            const SelectorConfig& config) {
  config.validate();
  std::vector<RecognitionRecord> candidates;
  for (std::size_t start = 0; start < records.size(); start += config.group_size) {
    const std::size_t count = std::min(config.group_size, records.size() - start);
    candidates.push_back(smooth_group(records.subspan(start, count)));
  }
  return candidates;
}

const RecognitionRecord& select_representative(std::span<const RecognitionRecord> candidates,
                                               const SelectorConfig& config) {
  config.validate();
  if (candidates.empty()) throw ContractError("scene has no detections");
  return closest_to_weighted_mean(candidates, kIntensity);
}

// --- SceneAnnotator --------------------------------------------------------

SceneAnnotator::SceneAnnotator(SelectorConfig config) : config_(config) { config_.validate(); }

void SceneAnnotator::add_record(RecognitionRecord record) {
  if (last_frame_ && record.frame_index <= *last_frame_) {
    throw ContractError(record.frame_index == *last_frame_
                            ? "duplicate detection for frame " + std::to_string(record.frame_index)
                            : "detections out of order: frame " +
                                  std::to_string(record.frame_index) + " after frame " +
                                  std::to_string(*last_frame_));
  }
  if (record.frame_index < next_scene_start_) {
    throw ContractError("detection for frame " + std::to_string(record.frame_index) +
                        " arrived after its scene was annotated");
  }
  last_frame_ = record.frame_index;
  pending_.push_back(std::move(record));
}

void SceneAnnotator::annotate(Scene& scene) {
  if (scene.start_frame != next_scene_start_ || scene.end_frame < scene.start_frame) {
    throw ContractError("scene " + std::to_string(scene.scene_id) + " does not start at frame " +
                        std::to_string(next_scene_start_));
  }
  std::size_t taken = 0;
  while (taken < pending_.size() && pending_[taken].frame_index <= scene.end_frame) ++taken;

  const std::span<const RecognitionRecord> in_scene(pending_.data(), taken);
  if (in_scene.empty()) {
    scene.representative.reset();
  } else {
    const auto candidates = smooth_scene(in_scene, config_);
    scene.representative = select_representative(candidates, config_);
  }
  pending_.erase(pending_.begin(), pending_.begin() + static_cast<std::ptrdiff_t>(taken));
  next_scene_start_ = scene.end_frame + 1;
}

void SceneAnnotator::finish() const {
  if (!pending_.empty()) {
    throw ContractError("detection for frame " + std::to_string(pending_.front().frame_index) +
                        " lies beyond the last frame " +
                        (next_scene_start_ == 0 ? std::string("(no frames)")
                                                : std::to_string(next_scene_start_ - 1)));
  }
}

std::vector<Scene> annotate_scenes(std::vector<Scene> scenes,
                                   std::span<const RecognitionRecord> records,
                                   const SelectorConfig& config) {
  SceneAnnotator annotator(config);
  std::size_t cursor = 0;
  for (auto& scene : scenes) {
    while (cursor < records.size() && records[cursor].frame_index <= scene.end_frame) {
      annotator.add_record(records[cursor++]);
    }
    annotator.annotate(scene);
  }
  while (cursor < records.size()) annotator.add_record(records[cursor++]);
  annotator.finish();
  return scenes;
}

}  // namespace scenesplit

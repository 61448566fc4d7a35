#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace scenesplit {

/// One frame's detector output: class labels in detector order, duplicates kept.
struct RecognitionRecord {
  std::size_t frame_index = 0;
  std::vector<std::string> labels;

  /// L: number of labels.
  std::size_t length() const noexcept { return labels.size(); }
  /// F: number of distinct labels.
  std::size_t feature_intensity() const;

  friend bool operator==(const RecognitionRecord&, const RecognitionRecord&) = default;
};

}  // namespace scenesplit

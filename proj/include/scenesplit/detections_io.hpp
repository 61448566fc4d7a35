#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scenesplit/record.hpp"

namespace scenesplit {

/// Line-by-line reader for detector output:
///   {"frame": <int >= 0>, "labels": ["person", "car", ...]}
/// Blank lines are skipped. Frames must be strictly increasing.
class DetectionReader {
 public:
  explicit DetectionReader(std::istream& in);

  /// Throws ParseError with the 1-based line number on bad input.
  std::optional<RecognitionRecord> next();

  std::size_t line_number() const noexcept { return line_; }

 private:
  std::istream* in_;
  std::size_t line_ = 0;
  std::optional<std::size_t> last_frame_;
};

std::vector<RecognitionRecord> parse_detections(std::istream& in);
std::vector<RecognitionRecord> parse_detections_string(const std::string& text);

/// One JSONL line, no trailing newline.
std::string serialize_detection(const RecognitionRecord& record);

}  // namespace scenesplit

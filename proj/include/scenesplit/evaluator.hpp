#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scenesplit {

struct GroundTruth {
  /// Frames where a new scene starts, excluding 0. Empty in count-only mode.
  std::vector<std::size_t> boundaries;
  std::size_t scene_count = 1;
  /// False when only a scene count is known.
  bool has_boundaries = true;

  static GroundTruth from_boundaries(std::vector<std::size_t> boundaries);
  static GroundTruth from_count(std::size_t scene_count);

  /// Throws ContractError if boundaries are unsorted, repeated or contain 0.
  void validate() const;
};

struct BoundaryScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t matches = 0;
};

struct EvalReport {
  std::size_t predicted_count = 0;
  std::size_t truth_count = 0;
  double count_accuracy = 0.0;
  std::optional<BoundaryScore> boundary;
  std::size_t tolerance = 2;
};

/// min(predicted, truth) / max(predicted, truth); 1 when both are 0.
double count_accuracy(std::size_t predicted, std::size_t truth) noexcept;

/// The same ratio as a percentage string with two decimals, halves rounded
/// up, computed in integer arithmetic: (29, 35) -> "82.86%".
std::string format_percent(std::size_t numerator, std::size_t denominator);
std::string count_accuracy_percent(std::size_t predicted, std::size_t truth);

/// Walks truth boundaries in order; each takes the nearest still-unmatched
/// predicted boundary within +-tolerance frames (ties to the earlier one).
/// Empty denominators score 0 unless both lists are empty, which scores 1.
/// Throws ContractError when either list is not strictly increasing.
BoundaryScore boundary_match(std::span<const std::size_t> predicted,
                             std::span<const std::size_t> truth, std::size_t tolerance);

EvalReport evaluate(const GroundTruth& predicted, const GroundTruth& truth, std::size_t tolerance);

/// Parses {"boundaries": [...]} or {"scene_count": N}.
GroundTruth parse_ground_truth(const std::string& json_text);
std::string serialize_ground_truth(const GroundTruth& truth);

/// Single-line JSON object.
std::string report_to_json(const EvalReport& report);
/// Aligned "Experiment No. | Output - Truth | Accuracy" table.
std::string report_to_table(const EvalReport& report, const std::string& label);

}  // namespace scenesplit

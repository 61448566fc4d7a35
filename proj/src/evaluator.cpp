#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "scenesplit/error.hpp"
#include "scenesplit/evaluator.hpp"

namespace scenesplit {

namespace {

void require_strictly_increasing(std::span<const std::size_t> values, const char* what) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) {
      throw ContractError(std::string(what) + " boundaries must be strictly increasing (" +
                          std::to_string(values[i - 1]) + " then " + std::to_string(values[i]) +
                          ")");
    }
  }
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

GroundTruth GroundTruth::from_boundaries(std::vector<std::size_t> boundaries) {
  GroundTruth truth;
  truth.scene_count = boundaries.size() + 1;
  truth.boundaries = std::move(boundaries);
  truth.has_boundaries = true;
  truth.validate();
  return truth;
}

GroundTruth GroundTruth::from_count(std::size_t scene_count) {
  GroundTruth truth;
  truth.scene_count = scene_count;
  truth.has_boundaries = false;
  return truth;
}

void GroundTruth::validate() const {
  if (!has_boundaries) return;
  require_strictly_increasing(boundaries, "ground-truth");
  if (!boundaries.empty() && boundaries.front() == 0) {
    throw ContractError("ground-truth boundaries must be >= 1");
  }
  if (scene_count != boundaries.size() + 1) {
    throw ContractError("scene_count disagrees with boundaries");
  }
}

double count_accuracy(std::size_t predicted, std::size_t truth) noexcept {
  if (predicted == 0 && truth == 0) return 1.0;
  return ratio(std::min(predicted, truth), std::max(predicted, truth));
}

std::string format_percent(std::size_t numerator, std::size_t denominator) {
  if (denominator == 0) throw ContractError("percentage of a zero denominator");
  // Hundredths of a percent, halves rounded up. Exact for counts below 10^14.
  const std::uint64_t num = static_cast<std::uint64_t>(numerator) * 10000u;
  const std::uint64_t den = denominator;
  const std::uint64_t hundredths = (2 * num + den) / (2 * den);
  std::ostringstream out;
  out << hundredths / 100 << '.' << std::setw(2) << std::setfill('0') << hundredths % 100 << '%';
  return out.str();
}

std::string count_accuracy_percent(std::size_t predicted, std::size_t truth) {
  if (predicted == 0 && truth == 0) return "100.00%";
  return format_percent(std::min(predicted, truth), std::max(predicted, truth));
}

BoundaryScore boundary_match(std::span<const std::size_t> predicted,
                             std::span<const std::size_t> truth, std::size_t tolerance) {
  require_strictly_increasing(predicted, "predicted");
  require_strictly_increasing(truth, "ground-truth");

  BoundaryScore score;
  if (predicted.empty() && truth.empty()) {
    score.precision = score.recall = score.f1 = 1.0;
    return score;
  }

  std::vector<bool> used(predicted.size(), false);
  for (const std::size_t t : truth) {
    const std::size_t low = t > tolerance ? t - tolerance : 0;
    auto it = std::lower_bound(predicted.begin(), predicted.end(), low);
    std::optional<std::size_t> best;
    std::size_t best_gap = 0;
    for (; it != predicted.end() && *it <= t + tolerance; ++it) {
      const auto k = static_cast<std::size_t>(it - predicted.begin());
      if (used[k]) continue;
      const std::size_t gap = *it > t ? *it - t : t - *it;
      if (!best || gap < best_gap) {
        best = k;
        best_gap = gap;
      }
    }
    if (best) {
      used[*best] = true;
      ++score.matches;
    }
  }

  score.precision = ratio(score.matches, predicted.size());
  score.recall = ratio(score.matches, truth.size());
  const double sum = score.precision + score.recall;
  score.f1 = sum == 0.0 ? 0.0 : 2.0 * score.precision * score.recall / sum;
  return score;
}

EvalReport evaluate(const GroundTruth& predicted, const GroundTruth& truth, std::size_t tolerance) {
  predicted.validate();
  truth.validate();
  EvalReport report;
  report.predicted_count = predicted.scene_count;
  report.truth_count = truth.scene_count;
  report.count_accuracy = count_accuracy(predicted.scene_count, truth.scene_count);
  report.tolerance = tolerance;
  if (predicted.has_boundaries && truth.has_boundaries) {
    report.boundary = boundary_match(predicted.boundaries, truth.boundaries, tolerance);
  }
  return report;
}

GroundTruth parse_ground_truth(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed ground-truth JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) throw ParseError("ground truth must be a JSON object");

  if (const auto it = doc.find("boundaries"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("\"boundaries\" must be an array");
    std::vector<std::size_t> boundaries;
    for (const auto& value : *it) {
      if (!value.is_number_unsigned()) {
        throw ParseError("\"boundaries\" must hold nonnegative integers");
      }
      boundaries.push_back(value.get<std::size_t>());
    }
    try {
      auto truth = GroundTruth::from_boundaries(std::move(boundaries));
      if (const auto count = doc.find("scene_count");
          count != doc.end() && (!count->is_number_unsigned() || count->get<std::size_t>() != truth.scene_count)) {
        throw ParseError("\"scene_count\" disagrees with \"boundaries\"");
      }
      return truth;
    } catch (const ContractError& e) {
      throw ParseError(e.what());
    }
  }
  if (const auto it = doc.find("scene_count"); it != doc.end()) {
    if (!it->is_number_unsigned()) throw ParseError("\"scene_count\" must be a nonnegative integer");
    return GroundTruth::from_count(it->get<std::size_t>());
  }
  throw ParseError("ground truth needs \"boundaries\" or \"scene_count\"");
}

std::string serialize_ground_truth(const GroundTruth& truth) {
  nlohmann::ordered_json doc;
  if (truth.has_boundaries) doc["boundaries"] = truth.boundaries;
  doc["scene_count"] = truth.scene_count;
  return doc.dump();
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::ordered_json doc;
  doc["predicted_count"] = report.predicted_count;
  doc["truth_count"] = report.truth_count;
  doc["count_accuracy"] = report.count_accuracy;
  doc["count_accuracy_percent"] = count_accuracy_percent(report.predicted_count, report.truth_count);
  if (report.boundary) {
    doc["boundary_precision"] = report.boundary->precision;
    doc["boundary_recall"] = report.boundary->recall;
    doc["boundary_f1"] = report.boundary->f1;
  } else {
    doc["boundary_precision"] = nullptr;
    doc["boundary_recall"] = nullptr;
    doc["boundary_f1"] = nullptr;
  }
  doc["tolerance"] = report.tolerance;
  return doc.dump();
}

std::string report_to_table(const EvalReport& report, const std::string& label) {
  const std::string counts =
      std::to_string(report.predicted_count) + " - " + std::to_string(report.truth_count);
  const std::string accuracy = count_accuracy_percent(report.predicted_count, report.truth_count);

  const std::string h1 = "Experiment No.";
  const std::string h2 = "Output - Truth";
  const std::string h3 = "Accuracy";
  const auto w1 = std::max(h1.size(), label.size());
  const auto w2 = std::max(h2.size(), counts.size());
  const auto w3 = std::max(h3.size(), accuracy.size());

  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(w1)) << h1 << "  " << std::setw(static_cast<int>(w2))
      << h2 << "  " << std::right << std::setw(static_cast<int>(w3)) << h3 << '\n';
  out << std::left << std::setw(static_cast<int>(w1)) << label << "  "
      << std::setw(static_cast<int>(w2)) << counts << "  " << std::right
      << std::setw(static_cast<int>(w3)) << accuracy << '\n';
  if (report.boundary) {
    out << std::fixed << std::setprecision(4) << "boundary precision " << report.boundary->precision
        << "  recall " << report.boundary->recall << "  f1 " << report.boundary->f1
        << "  (tolerance " << report.tolerance << " frames)\n";
  }
  return out.str();
}

}  // namespace scenesplit

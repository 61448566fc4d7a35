#include <istream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "scenesplit/detections_io.hpp"
#include "scenesplit/error.hpp"

namespace scenesplit {

namespace {

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

DetectionReader::DetectionReader(std::istream& in) : in_(&in) {}

std::optional<RecognitionRecord> DetectionReader::next() {
  std::string line;
  while (std::getline(*in_, line)) {
    ++line_;
    if (is_blank(line)) continue;

    const std::string where = "line " + std::to_string(line_);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(where + ": malformed JSON (" + e.what() + ")");
    }
    if (!doc.is_object()) throw ParseError(where + ": expected a JSON object");

    const auto frame = doc.find("frame");
    if (frame == doc.end() || !frame->is_number_integer()) {
      throw ParseError(where + ": \"frame\" must be an integer");
    }
    if (frame->is_number_unsigned() == false && frame->get<std::int64_t>() < 0) {
      throw ParseError(where + ": negative frame " + std::to_string(frame->get<std::int64_t>()));
    }
    const auto index = frame->get<std::size_t>();
    if (last_frame_ && index <= *last_frame_) {
      throw ParseError(where + ": frame " + std::to_string(index) + " does not follow frame " +
                       std::to_string(*last_frame_));
    }

    const auto labels = doc.find("labels");
    if (labels == doc.end() || !labels->is_array()) {
      throw ParseError(where + ": \"labels\" must be an array of strings");
    }
    RecognitionRecord record;
    record.frame_index = index;
    record.labels.reserve(labels->size());
    for (const auto& label : *labels) {
      if (!label.is_string() || label.get_ref<const std::string&>().empty()) {
        throw ParseError(where + ": labels must be nonempty strings");
      }
      record.labels.push_back(label.get<std::string>());
    }
    last_frame_ = index;
    return record;
  }
  return std::nullopt;
}

std::vector<RecognitionRecord> parse_detections(std::istream& in) {
  DetectionReader reader(in);
  std::vector<RecognitionRecord> records;
  while (auto record = reader.next()) records.push_back(std::move(*record));
  return records;
}

std::vector<RecognitionRecord> parse_detections_string(const std::string& text) {
  std::istringstream in(text);
  return parse_detections(in);
}

std::string serialize_detection(const RecognitionRecord& record) {
  nlohmann::ordered_json doc;
  doc["frame"] = record.frame_index;
  doc["labels"] = record.labels;
  return doc.dump();
}

}  // namespace scenesplit

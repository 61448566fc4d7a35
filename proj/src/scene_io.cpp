#include <istream>

#include <nlohmann/json.hpp>

#include "scenesplit/error.hpp"
#include "scenesplit/scene_io.hpp"

namespace scenesplit {

namespace {

nlohmann::ordered_json scene_object(const Scene& scene) {
  nlohmann::ordered_json doc;
  doc["scene_id"] = scene.scene_id;
  doc["start_frame"] = scene.start_frame;
  doc["end_frame"] = scene.end_frame;
  doc["length"] = scene.length();
  return doc;
}

std::size_t require_index(const nlohmann::json& doc, const char* key, const std::string& where) {
  const auto it = doc.find(key);
  if (it == doc.end() || !it->is_number_unsigned()) {
    throw ParseError(where + ": \"" + key + "\" must be a nonnegative integer");
  }
  return it->get<std::size_t>();
}

}  // namespace

std::string scene_to_json(const Scene& scene) { return scene_object(scene).dump(); }

std::string annotated_scene_to_json(const Scene& scene) {
  auto doc = scene_object(scene);
  if (scene.representative) {
    doc["representative_frame"] = scene.representative->frame_index;
    doc["representative_labels"] = scene.representative->labels;
  } else {
    doc["representative_frame"] = nullptr;
    doc["representative_labels"] = nullptr;
  }
  return doc.dump();
}

std::vector<Scene> parse_scenes(std::istream& in) {
  std::vector<Scene> scenes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    const std::string where = "line " + std::to_string(line_no);

    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(where + ": malformed JSON (" + e.what() + ")");
    }
    if (!doc.is_object()) throw ParseError(where + ": expected a JSON object");

    Scene scene;
    scene.scene_id = require_index(doc, "scene_id", where);
    scene.start_frame = require_index(doc, "start_frame", where);
    scene.end_frame = require_index(doc, "end_frame", where);
    if (scene.end_frame < scene.start_frame) {
      throw ParseError(where + ": end_frame precedes start_frame");
    }
    const std::size_t expected_start = scenes.empty() ? 0 : scenes.back().end_frame + 1;
    if (scene.start_frame != expected_start) {
      throw ParseError(where + ": scene starts at frame " + std::to_string(scene.start_frame) +
                       ", expected " + std::to_string(expected_start));
    }
    if (doc.contains("length") && require_index(doc, "length", where) != scene.length()) {
      throw ParseError(where + ": length disagrees with start_frame/end_frame");
    }

    const auto rep = doc.find("representative_frame");
    if (rep != doc.end() && !rep->is_null()) {
      RecognitionRecord record;
      record.frame_index = require_index(doc, "representative_frame", where);
      const auto labels = doc.find("representative_labels");
      if (labels == doc.end() || !labels->is_array()) {
        throw ParseError(where + ": \"representative_labels\" must be an array");
      }
      for (const auto& label : *labels) {
        if (!label.is_string()) throw ParseError(where + ": labels must be strings");
        record.labels.push_back(label.get<std::string>());
      }
      scene.representative = std::move(record);
    }
    scenes.push_back(std::move(scene));
  }
  return scenes;
}

}  // namespace scenesplit

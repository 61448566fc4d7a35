#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "scenesplit/segmenter.hpp"

namespace scenesplit {

/// {"scene_id":..,"start_frame":..,"end_frame":..,"length":..}
std::string scene_to_json(const Scene& scene);
/// Adds "representative_frame" and "representative_labels" (null when absent).
std::string annotated_scene_to_json(const Scene& scene);

/// Reads scene JSONL as written by either function above. Scenes must
/// partition a frame range starting at 0. Throws ParseError with line numbers.
std::vector<Scene> parse_scenes(std::istream& in);

}  // namespace scenesplit

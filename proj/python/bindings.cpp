#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scenesplit/detections_io.hpp"
#include "scenesplit/dhash.hpp"
#include "scenesplit/error.hpp"
#include "scenesplit/evaluator.hpp"
#include "scenesplit/frame.hpp"
#include "scenesplit/segmenter.hpp"
#include "scenesplit/selector.hpp"

namespace py = pybind11;
using namespace scenesplit;

namespace {

using ByteArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

Frame frame_from_array(const ByteArray& image, std::size_t index) {
  if (image.ndim() != 3 || image.shape(2) != 3) {
    throw py::value_error("expected an (height, width, 3) uint8 array");
  }
  const auto height = static_cast<int>(image.shape(0));
  const auto width = static_cast<int>(image.shape(1));
  std::vector<std::uint8_t> pixels(image.data(), image.data() + image.size());
  return Frame(index, width, height, std::move(pixels));
}

py::array_t<std::uint8_t> frame_to_array(const Frame& frame) {
  py::array_t<std::uint8_t> out({frame.height(), frame.width(), 3});
  std::copy(frame.pixels().begin(), frame.pixels().end(), out.mutable_data());
  return out;
}

GraySubImage gray_from_array(const ByteArray& gray) {
  if (gray.ndim() != 2 || gray.shape(0) != kGridRows || gray.shape(1) != kGridCols) {
    throw py::value_error("expected an (8, 9) uint8 array");
  }
  GraySubImage out;
  std::copy(gray.data(), gray.data() + kGridCells, out.begin());
  return out;
}

RgbSubImage rgb_from_array(const ByteArray& sub) {
  if (sub.ndim() != 3 || sub.shape(0) != kGridRows || sub.shape(1) != kGridCols || sub.shape(2) != 3) {
    throw py::value_error("expected an (8, 9, 3) uint8 array");
  }
  RgbSubImage out;
  const auto* p = sub.data();
  for (int i = 0; i < kGridCells; ++i) out[i] = {p[3 * i], p[3 * i + 1], p[3 * i + 2]};
  return out;
}

FrameHash to_hash(const py::handle& value) {
  if (py::isinstance<FrameHash>(value)) return value.cast<FrameHash>();
  if (py::isinstance<py::str>(value)) return FrameHash::from_hex(value.cast<std::string>());
  return FrameHash(value.cast<std::uint64_t>());
}

}  // namespace

PYBIND11_MODULE(_scenesplit, m) {
  m.doc() = "Streaming scene separation by difference hashing, with per-scene representative selection";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<IngestError>(m, "IngestError", base.ptr());
  py::register_exception<ContractError>(m, "ContractError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  // dhash
  py::class_<FrameHash>(m, "FrameHash")
      .def(py::init<std::uint64_t>(), py::arg("bits") = 0)
      .def_static("from_hex", &FrameHash::from_hex, py::arg("text"))
      .def_property_readonly("bits", &FrameHash::bits)
      .def_property_readonly("hex", &FrameHash::hex)
      .def("__int__", &FrameHash::bits)
      .def("__eq__", [](FrameHash a, FrameHash b) { return a == b; })
      .def("__hash__", [](FrameHash a) { return py::hash(py::int_(a.bits())); })
      .def("__repr__", [](FrameHash a) { return "FrameHash('" + a.hex() + "')"; });

  m.def("downsample", [](const ByteArray& image) {
    const auto sub = downsample(frame_from_array(image, 0));
    py::array_t<std::uint8_t> out({kGridRows, kGridCols, 3});
    auto* p = out.mutable_data();
    for (int i = 0; i < kGridCells; ++i) {
      p[3 * i] = sub[i].r;
      p[3 * i + 1] = sub[i].g;
      p[3 * i + 2] = sub[i].b;
    }
    return out;
  }, py::arg("image"), "Box-filter an (H, W, 3) image down to (8, 9, 3).");
  m.def("to_gray", [](const ByteArray& sub) {
    const auto gray = to_gray(rgb_from_array(sub));
    py::array_t<std::uint8_t> out({kGridRows, kGridCols});
    std::copy(gray.begin(), gray.end(), out.mutable_data());
    return out;
  }, py::arg("subimage"));
  m.def("hash_rows", [](const ByteArray& gray) { return hash_rows(gray_from_array(gray)); },
        py::arg("gray"));
  m.def("hash_frame", [](const ByteArray& image) { return hash_frame(frame_from_array(image, 0)); },
        py::arg("image"));
  m.def("hamming", [](const py::handle& a, const py::handle& b) { return hamming(to_hash(a), to_hash(b)); },
        py::arg("a"), py::arg("b"), "Accepts FrameHash, int or 16-digit hex strings.");

  // segmenter
  py::class_<RecognitionRecord>(m, "RecognitionRecord")
      .def(py::init<std::size_t, std::vector<std::string>>(), py::arg("frame_index"),
           py::arg("labels") = std::vector<std::string>{})
      .def_readwrite("frame_index", &RecognitionRecord::frame_index)
      .def_readwrite("labels", &RecognitionRecord::labels)
      .def_property_readonly("length", &RecognitionRecord::length)
      .def_property_readonly("feature_intensity", &RecognitionRecord::feature_intensity)
      .def("__eq__", [](const RecognitionRecord& a, const RecognitionRecord& b) { return a == b; })
      .def("__repr__", [](const RecognitionRecord& r) {
        return "RecognitionRecord(" + std::to_string(r.frame_index) + ", " +
               py::repr(py::cast(r.labels)).cast<std::string>() + ")";
      });

  py::class_<Scene>(m, "Scene")
      .def_readonly("scene_id", &Scene::scene_id)
      .def_readonly("start_frame", &Scene::start_frame)
      .def_readonly("end_frame", &Scene::end_frame)
      .def_readonly("representative", &Scene::representative)
      .def_property_readonly("length", &Scene::length)
      .def("__repr__", [](const Scene& s) {
        return "Scene(id=" + std::to_string(s.scene_id) + ", frames=" + std::to_string(s.start_frame) +
               ".." + std::to_string(s.end_frame) + ")";
      });

  py::class_<Segmenter>(m, "Segmenter")
      .def(py::init([](int threshold) { return Segmenter(SegmenterConfig{threshold}); }),
           py::arg("threshold") = 5)
      .def("push_frame", [](Segmenter& s, const py::handle& hash, std::size_t index) {
        return s.push_frame(to_hash(hash), index);
      }, py::arg("hash"), py::arg("frame_index"))
      .def("flush", &Segmenter::flush)
      .def_property_readonly("frames_pushed", &Segmenter::frames_pushed);

  m.def("segment_hashes", [](const std::vector<py::handle>& hashes, int threshold) {
    std::vector<FrameHash> converted;
    converted.reserve(hashes.size());
    for (const auto& h : hashes) converted.push_back(to_hash(h));
    return segment_hashes(converted, SegmenterConfig{threshold});
  }, py::arg("hashes"), py::arg("threshold") = 5);
  m.def("segment_frames", [](const std::vector<ByteArray>& frames, int threshold) {
    Segmenter segmenter(SegmenterConfig{threshold});
    std::vector<Scene> scenes;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      if (auto s = segmenter.push_frame(hash_frame(frame_from_array(frames[i], i)), i)) scenes.push_back(*s);
    }
    scenes.push_back(segmenter.flush());
    return scenes;
  }, py::arg("frames"), py::arg("threshold") = 5);

  // selector
  m.def("weighted_average_length",
        [](const std::vector<RecognitionRecord>& g, double w) { return weighted_average_length(g, w); },
        py::arg("group"), py::arg("weight_factor") = 0.1);
  m.def("smooth_group", [](const std::vector<RecognitionRecord>& g) { return smooth_group(g); },
        py::arg("group"));
  m.def("smooth_scene", [](const std::vector<RecognitionRecord>& records, std::size_t group_size,
                           double weight_factor) {
    return smooth_scene(records, {group_size, weight_factor});
  }, py::arg("records"), py::arg("group_size") = 5, py::arg("weight_factor") = 0.1);
  m.def("select_representative", [](const std::vector<RecognitionRecord>& candidates, double weight_factor) {
    return select_representative(candidates, {5, weight_factor});
  }, py::arg("candidates"), py::arg("weight_factor") = 0.1);
  m.def("annotate_scenes", [](std::vector<Scene> scenes, const std::vector<RecognitionRecord>& records,
                              std::size_t group_size, double weight_factor) {
    return annotate_scenes(std::move(scenes), records, {group_size, weight_factor});
  }, py::arg("scenes"), py::arg("records"), py::arg("group_size") = 5, py::arg("weight_factor") = 0.1);

  // detections
  m.def("parse_detections", &parse_detections_string, py::arg("text"));
  m.def("serialize_detection", &serialize_detection, py::arg("record"));

  // evaluator
  py::class_<BoundaryScore>(m, "BoundaryScore")
      .def_readonly("precision", &BoundaryScore::precision)
      .def_readonly("recall", &BoundaryScore::recall)
      .def_readonly("f1", &BoundaryScore::f1)
      .def_readonly("matches", &BoundaryScore::matches);
  m.def("count_accuracy", &count_accuracy, py::arg("predicted"), py::arg("truth"));
  m.def("count_accuracy_percent", &count_accuracy_percent, py::arg("predicted"), py::arg("truth"));
  m.def("boundary_match", [](const std::vector<std::size_t>& p, const std::vector<std::size_t>& t,
                             std::size_t tolerance) { return boundary_match(p, t, tolerance); },
        py::arg("predicted"), py::arg("truth"), py::arg("tolerance") = 2);

  // synthetic frames
  m.def("generate_synthetic", [](int scene_count, int frames_per_scene, int width, int height,
                                 std::uint64_t seed, int noise) {
    SyntheticSource source({scene_count, frames_per_scene, width, height, seed, noise});
    py::list frames;
    while (auto frame = source.next()) frames.append(frame_to_array(*frame));
    return py::make_tuple(frames, source.boundaries());
  }, py::arg("scene_count"), py::arg("frames_per_scene"), py::arg("width") = 320,
        py::arg("height") = 240, py::arg("seed") = 42, py::arg("noise") = 0,
        "Returns (frames, boundaries); frames are (height, width, 3) uint8 arrays.");
}

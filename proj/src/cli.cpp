#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "scenesplit/cli.hpp"
#include "scenesplit/detections_io.hpp"
#include "scenesplit/dhash.hpp"
#include "scenesplit/error.hpp"
#include "scenesplit/evaluator.hpp"
#include "scenesplit/frame.hpp"
#include "scenesplit/scene_io.hpp"
#include "scenesplit/segmenter.hpp"
#include "scenesplit/selector.hpp"

namespace fs = std::filesystem;

namespace scenesplit::cli {

namespace {

/// Raised for flag combinations CLI11 cannot express; maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct InputOptions {
  std::string input;
  bool raw = false;
  int width = 0;
  int height = 0;
  bool stats = false;
};

struct Options {
  InputOptions source;
  std::string output;
  std::string detections;
  std::string truth;
  int threshold = 5;
  std::size_t group_size = 5;
  double weight_factor = 0.1;
  std::size_t tolerance = 2;
  std::string format = "json";
  std::string label = "Experiment 1";
  SynthSpec synth;
};

class Stats {
 public:
  explicit Stats(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}

  void report(std::ostream& err, std::size_t frames) const {
    if (!enabled_) return;
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    err << std::fixed << std::setprecision(3) << "stats: " << frames << " frames in " << seconds
        << " s (" << std::setprecision(1) << (seconds > 0 ? frames / seconds : 0.0)
        << " frames/s)\n";
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

void add_input_options(CLI::App& cmd, InputOptions& opts) {
  cmd.add_option("--input", opts.input, "Directory of PPM/PGM frames, or raw RGB24 file with --raw");
  cmd.add_flag("--raw", opts.raw, "Read packed RGB24 frames (stdin unless --input is given)");
  cmd.add_option("--width", opts.width, "Raw frame width")->check(CLI::PositiveNumber);
  cmd.add_option("--height", opts.height, "Raw frame height")->check(CLI::PositiveNumber);
  cmd.add_flag("--stats", opts.stats, "Report throughput on stderr");
}

void check_input_options(const InputOptions& opts) {
  if (opts.raw) {
    if (opts.width == 0 || opts.height == 0) throw UsageError("--raw requires --width and --height");
  } else {
    if (opts.input.empty()) throw UsageError("--input is required");
    if (opts.width != 0 || opts.height != 0) throw UsageError("--width/--height only apply with --raw");
  }
}

// Owns whatever stream the frame source reads from.
struct OpenedSource {
  std::unique_ptr<std::ifstream> file;
  std::unique_ptr<FrameSource> source;
};

OpenedSource open_source(const InputOptions& opts, std::istream& stdin_stream) {
  OpenedSource opened;
  if (!opts.raw) {
    opened.source = std::make_unique<ImageSequenceSource>(opts.input);
    return opened;
  }
  std::istream* in = &stdin_stream;
  if (!opts.input.empty() && opts.input != "-") {
    opened.file = std::make_unique<std::ifstream>(opts.input, std::ios::binary);
    if (!*opened.file) throw IngestError("cannot read " + opts.input);
    in = opened.file.get();
  }
  opened.source = std::make_unique<RawStreamSource>(*in, opts.width, opts.height);
  return opened;
}

// --output path, or the caller's stream when empty / "-".
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }
  void flush() { stream_->flush(); }

  void line(const std::string& text) {
    *stream_ << text << '\n';
    stream_->flush();
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

SelectorConfig selector_config(const Options& opts) {
  SelectorConfig config{opts.group_size, opts.weight_factor};
  config.validate();
  return config;
}

// --- subcommands -----------------------------------------------------------

int cmd_hash(const Options& opts, std::istream& in, std::ostream& out, std::ostream& err) {
  check_input_options(opts.source);
  Stats stats(opts.source.stats);
  auto opened = open_source(opts.source, in);
  Output sink(opts.output, out);

  *sink << "index,hash,distance\n";
  std::optional<FrameHash> previous;
  std::size_t count = 0;
  while (auto frame = opened.source->next()) {
    const FrameHash hash = hash_frame(*frame);
    *sink << frame->index() << ',' << hash.hex() << ',';
    if (previous) *sink << hamming(*previous, hash);
    *sink << '\n';
    previous = hash;
    ++count;
  }
  sink.flush();
  stats.report(err, count);
  return kExitOk;
}

int cmd_segment(const Options& opts, std::istream& in, std::ostream& out, std::ostream& err) {
  check_input_options(opts.source);
  SegmenterConfig config{opts.threshold};
  config.validate();
  Stats stats(opts.source.stats);
  auto opened = open_source(opts.source, in);
  Output sink(opts.output, out);

  Segmenter segmenter(config);
  while (auto frame = opened.source->next()) {
    if (auto scene = segmenter.push_frame(hash_frame(*frame), frame->index())) {
      sink.line(scene_to_json(*scene));
    }
  }
  const std::size_t frames = segmenter.frames_pushed();
  sink.line(scene_to_json(segmenter.flush()));
  stats.report(err, frames);
  return kExitOk;
}

int cmd_run(const Options& opts, std::istream& in, std::ostream& out, std::ostream& err) {
  check_input_options(opts.source);
  SegmenterConfig seg_config{opts.threshold};
  seg_config.validate();
  const SelectorConfig sel_config = selector_config(opts);
  Stats stats(opts.source.stats);

  std::ifstream det_file(opts.detections, std::ios::binary);
  if (!det_file) throw Error("cannot read " + opts.detections);
  DetectionReader reader(det_file);
  auto opened = open_source(opts.source, in);
  Output sink(opts.output, out);

  SceneAnnotator annotator(sel_config);
  std::optional<RecognitionRecord> lookahead = reader.next();
  auto emit = [&](Scene scene) {
    while (lookahead && lookahead->frame_index <= scene.end_frame) {
      annotator.add_record(std::move(*lookahead));
      lookahead = reader.next();
    }
    annotator.annotate(scene);
    sink.line(annotated_scene_to_json(scene));
  };

  Segmenter segmenter(seg_config);
  while (auto frame = opened.source->next()) {
    if (auto scene = segmenter.push_frame(hash_frame(*frame), frame->index())) emit(std::move(*scene));
  }
  const std::size_t frames = segmenter.frames_pushed();
  emit(segmenter.flush());
  if (lookahead) annotator.add_record(std::move(*lookahead));
  annotator.finish();
  stats.report(err, frames);
  return kExitOk;
}

int cmd_select(const Options& opts, std::ostream& out) {
  if (opts.source.input.empty()) throw UsageError("--input (scene JSONL) is required");
  const SelectorConfig config = selector_config(opts);

  std::ifstream scene_file(opts.source.input, std::ios::binary);
  if (!scene_file) throw Error("cannot read " + opts.source.input);
  std::ifstream det_file(opts.detections, std::ios::binary);
  if (!det_file) throw Error("cannot read " + opts.detections);

  const auto scenes = parse_scenes(scene_file);
  const auto records = parse_detections(det_file);
  Output sink(opts.output, out);
  for (const auto& scene : annotate_scenes(scenes, records, config)) {
    sink.line(annotated_scene_to_json(scene));
  }
  return kExitOk;
}

// A predicted file is either scene JSONL or a ground-truth style object.
GroundTruth load_predicted(const std::string& path) {
  const std::string text = read_text(path);
  {
    std::istringstream probe(text);
    std::string first;
    while (std::getline(probe, first) && first.find_first_not_of(" \t\r\n") == std::string::npos) {
    }
    const auto doc = nlohmann::json::parse(first, nullptr, false);
    if (doc.is_object() && !doc.contains("scene_id") &&
        (doc.contains("boundaries") || doc.contains("scene_count"))) {
      return parse_ground_truth(text);
    }
  }
  std::istringstream in(text);
  const auto scenes = parse_scenes(in);
  if (scenes.empty()) return GroundTruth::from_count(0);
  return GroundTruth::from_boundaries(scene_boundaries(scenes));
}

int cmd_eval(const Options& opts, std::ostream& out) {
  if (opts.source.input.empty()) throw UsageError("--input (predicted scenes) is required");
  const GroundTruth predicted = load_predicted(opts.source.input);
  const GroundTruth truth = parse_ground_truth(read_text(opts.truth));
  const EvalReport report = evaluate(predicted, truth, opts.tolerance);

  Output sink(opts.output, out);
  if (opts.format == "table") {
    *sink << report_to_table(report, opts.label);
  } else {
    *sink << report_to_json(report) << '\n';
  }
  sink.flush();
  return kExitOk;
}

int cmd_synth(const Options& opts, std::ostream& out) {
  opts.synth.validate();
  const fs::path dir(opts.output);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error("cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));
  }

  SyntheticSource source(opts.synth);
  const std::size_t total = opts.synth.total_frames();
  const std::size_t digits = std::max<std::size_t>(6, std::to_string(total - 1).size());
  while (auto frame = source.next()) {
    std::ostringstream name;
    name << "frame_" << std::setw(static_cast<int>(digits)) << std::setfill('0') << frame->index()
         << ".ppm";
    write_file(dir / name.str(), encode_ppm(*frame));
  }
  const std::string truth = serialize_ground_truth(GroundTruth::from_boundaries(source.boundaries())) + "\n";
  write_file(dir / "truth.json",
             std::span(reinterpret_cast<const std::uint8_t*>(truth.data()), truth.size()));
  out << "wrote " << total << " frames and truth.json to " << dir.string() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Options opts;
  CLI::App app{"Streaming scene separation and per-scene representative selection"};
  app.require_subcommand(1);

  auto add_threshold = [&](CLI::App* cmd) {
    cmd->add_option("--threshold", opts.threshold, "Split when Hamming distance exceeds this")
        ->check(CLI::Range(0, 64));
  };
  auto add_selector = [&](CLI::App* cmd) {
    cmd->add_option("--group-size", opts.group_size, "Records per smoothing group")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--weight-factor", opts.weight_factor, "Per-record weight factor")
        ->check(CLI::PositiveNumber);
  };

  auto* hash = app.add_subcommand("hash", "Per-frame CSV of hashes and adjacent distances");
  add_input_options(*hash, opts.source);
  hash->add_option("--output", opts.output, "Output file (default stdout)");

  auto* segment = app.add_subcommand("segment", "Split frames into scenes (JSONL)");
  add_input_options(*segment, opts.source);
  add_threshold(segment);
  segment->add_option("--output", opts.output, "Output file (default stdout)");

  auto* run_cmd = app.add_subcommand("run", "Segment and pick a representative per scene");
  add_input_options(*run_cmd, opts.source);
  add_threshold(run_cmd);
  add_selector(run_cmd);
  run_cmd->add_option("--detections", opts.detections, "Detector output JSONL")->required();
  run_cmd->add_option("--output", opts.output, "Output file (default stdout)");

  auto* select = app.add_subcommand("select", "Annotate an existing scene JSONL");
  select->add_option("--input", opts.source.input, "Scene JSONL")->required();
  select->add_option("--detections", opts.detections, "Detector output JSONL")->required();
  add_selector(select);
  select->add_option("--output", opts.output, "Output file (default stdout)");

  auto* eval = app.add_subcommand("eval", "Score predicted scenes against ground truth");
  eval->add_option("--input", opts.source.input, "Predicted scene JSONL or boundaries JSON")
      ->required();
  eval->add_option("--truth", opts.truth, "Ground-truth JSON")->required();
  eval->add_option("--tolerance", opts.tolerance, "Boundary match window in frames");
  eval->add_option("--format", opts.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  eval->add_option("--label", opts.label, "Row label for --format table");
  eval->add_option("--output", opts.output, "Output file (default stdout)");

  auto* synth = app.add_subcommand("synth", "Write a synthetic PPM sequence plus truth.json");
  synth->add_option("--scenes", opts.synth.scene_count, "Number of scenes")->check(CLI::PositiveNumber);
  synth->add_option("--frames-per-scene", opts.synth.frames_per_scene, "Frames per scene")
      ->check(CLI::PositiveNumber);
  synth->add_option("--width", opts.synth.width, "Frame width");
  synth->add_option("--height", opts.synth.height, "Frame height");
  synth->add_option("--noise", opts.synth.noise_amplitude, "Per-pixel jitter amplitude")
      ->check(CLI::Range(0, 255));
  synth->add_option("--seed", opts.synth.rng_seed, "Generator seed");
  synth->add_option("--output", opts.output, "Output directory")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nRun with --help for more information.\n";
    return kExitUsage;
  }

  try {
    if (hash->parsed()) return cmd_hash(opts, in, out, err);
    if (segment->parsed()) return cmd_segment(opts, in, out, err);
    if (run_cmd->parsed()) return cmd_run(opts, in, out, err);
    if (select->parsed()) return cmd_select(opts, out);
    if (eval->parsed()) return cmd_eval(opts, out);
    if (synth->parsed()) return cmd_synth(opts, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitProcessing;
  }
  return kExitUsage;
}

}  // namespace scenesplit::cli

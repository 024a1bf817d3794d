#include "mft/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace mft {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool skip_line(std::string_view line) {
  const std::string_view t = trim(line);
  return t.empty() || t.front() == '#';
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void line_error(ErrorKind kind, std::size_t line_no, const std::string& what) {
  throw Error(kind, "line " + std::to_string(line_no) + ": " + what);
}

double parse_double(std::string_view field, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
    line_error(ErrorKind::input, line_no, "expected a number, got '" + std::string(field) + "'");
  }
  return v;
}

std::int64_t parse_int(std::string_view field, std::size_t line_no) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    line_error(ErrorKind::input, line_no, "expected an integer, got '" + std::string(field) + "'");
  }
  return v;
}

ObjectState parse_box(const std::vector<std::string_view>& f, std::size_t at, std::size_t line_no) {
  ObjectState s{parse_double(f[at], line_no), parse_double(f[at + 1], line_no),
                parse_double(f[at + 2], line_no), parse_double(f[at + 3], line_no)};
  if (!s.valid()) line_error(ErrorKind::input, line_no, "box width and height must be positive");
  return s;
}

void write_box(std::ostream& out, const ObjectState& s) {
  out << format_number(s.x) << ',' << format_number(s.y) << ',' << format_number(s.l) << ','
      << format_number(s.h);
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

ColorHistogram rebin(std::span<const double> raw, std::size_t bins) {
  if (raw.size() != kRawHistogramBins) {
    throw Error(ErrorKind::shape, "raw histogram must have 768 bins, got " +
                                      std::to_string(raw.size()));
  }
  const std::size_t per_channel = bins / 3;
  if (bins == 0 || bins % 3 != 0 || 256 % per_channel != 0) {
    throw Error(ErrorKind::config, "histogram_bins = " + std::to_string(bins) +
                                       " is not 3 * b with b dividing 256");
  }
  const std::size_t group = 256 / per_channel;
  std::vector<double> out(bins, 0.0);
  for (std::size_t k = 0; k < raw.size(); ++k) out[k / group] += raw[k];
  return ColorHistogram(std::move(out));
}

// ---------------------------------------------------------------------------
// Detections
// ---------------------------------------------------------------------------

std::vector<Frame> read_detections(std::istream& in, std::size_t bins) {
  std::map<FrameId, Frame> frames;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    const auto f = split(line);
    if (f.size() < 6) line_error(ErrorKind::input, line_no, "expected at least 6 columns");

    Detection det;
    det.frame_id = parse_int(f[0], line_no);
    det.detection_id = parse_int(f[1], line_no);
    if (det.frame_id < 0) line_error(ErrorKind::input, line_no, "frame id must be non-negative");
    det.state = parse_box(f, 2, line_no);

    const std::size_t count = f.size() - 6;
    std::vector<double> hist;
    hist.reserve(count);
    for (std::size_t k = 6; k < f.size(); ++k) {
      const double c = parse_double(f[k], line_no);
      if (c < 0.0) line_error(ErrorKind::input, line_no, "histogram counts must be non-negative");
      hist.push_back(c);
    }
    if (count == 0) {
      det.histogram = ColorHistogram(bins);
    } else if (count == bins) {
      det.histogram = ColorHistogram(std::move(hist));
    } else if (count == kRawHistogramBins) {
      det.histogram = rebin(hist, bins);
    } else {
      line_error(ErrorKind::shape, line_no,
                 "histogram has " + std::to_string(count) + " bins, expected " +
                     std::to_string(bins) + " or 768");
    }

    Frame& frame = frames[det.frame_id];
    frame.frame_id = det.frame_id;
    for (const Detection& other : frame.detections) {
      if (other.detection_id == det.detection_id) {
        line_error(ErrorKind::input, line_no,
                   "duplicate detection id " + std::to_string(det.detection_id));
      }
    }
    frame.detections.push_back(std::move(det));
  }

  std::vector<Frame> out;
  out.reserve(frames.size());
  for (auto& [id, frame] : frames) {
    std::sort(frame.detections.begin(), frame.detections.end(),
              [](const Detection& a, const Detection& b) { return a.detection_id < b.detection_id; });
    out.push_back(std::move(frame));
  }
  return out;
}

std::vector<Frame> load_detections(const std::filesystem::path& path, std::size_t bins) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input, "cannot open detections file " + path.string());
  return read_detections(in, bins);
}

void write_detections(std::ostream& out, std::span<const Frame> frames) {
  for (const Frame& frame : frames) {
    for (const Detection& det : frame.detections) {
      out << det.frame_id << ',' << det.detection_id << ',';
      write_box(out, det.state);
      for (double c : det.histogram.counts()) out << ',' << format_number(c);
      out << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// Ground truth and trajectories
// ---------------------------------------------------------------------------

std::vector<GroundTruthObject> read_ground_truth(std::istream& in) {
  std::map<std::int64_t, GroundTruthObject> objects;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    const auto f = split(line);
    if (f.size() != 6) line_error(ErrorKind::input, line_no, "expected 6 columns");
    const std::int64_t id = parse_int(f[0], line_no);
    const FrameId frame = parse_int(f[1], line_no);
    GroundTruthObject& obj = objects[id];
    obj.id = id;
    if (!obj.states.emplace(frame, parse_box(f, 2, line_no)).second) {
      line_error(ErrorKind::input, line_no, "duplicate frame for ground-truth object");
    }
  }
  std::vector<GroundTruthObject> out;
  for (auto& [id, obj] : objects) out.push_back(std::move(obj));
  return out;
}

void write_ground_truth(std::ostream& out, std::span<const GroundTruthObject> gt) {
  for (const GroundTruthObject& obj : gt) {
    for (const auto& [frame, state] : obj.states) {
      out << obj.id << ',' << frame << ',';
      write_box(out, state);
      out << '\n';
    }
  }
}

std::vector<Trajectory> read_trajectories(std::istream& in) {
  std::map<TrackId, Trajectory> tracks;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    const auto f = split(line);
    if (f.size() != 7) line_error(ErrorKind::input, line_no, "expected 7 columns");
    const TrackId id = parse_int(f[0], line_no);
    TrackSample s;
    s.frame = parse_int(f[1], line_no);
    s.state = parse_box(f, 2, line_no);
    const std::int64_t flag = parse_int(f[6], line_no);
    if (flag != 0 && flag != 1) line_error(ErrorKind::input, line_no, "status flag must be 0 or 1");
    // Detection ids are not part of the format; 0 marks a matched row.
    if (flag == 0) s.detection = 0;
    Trajectory& t = tracks[id];
    t.id = id;
    t.samples.push_back(s);
  }
  std::vector<Trajectory> out;
  for (auto& [id, t] : tracks) {
    std::sort(t.samples.begin(), t.samples.end(),
              [](const TrackSample& a, const TrackSample& b) { return a.frame < b.frame; });
    out.push_back(std::move(t));
  }
  return out;
}

void write_trajectories(std::ostream& out, std::span<const Trajectory> trajectories) {
  for (const Trajectory& t : trajectories) {
    for (const TrackSample& s : t.samples) {
      out << t.id << ',' << s.frame << ',';
      write_box(out, s.state);
      out << ',' << (s.held() ? 1 : 0) << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

namespace {

template <typename Enum>
Enum parse_enum(std::string_view value, std::initializer_list<Enum> options,
                const std::string& key) {
  for (Enum e : options) {
    if (value == to_string(e)) return e;
  }
  throw Error(ErrorKind::config, "invalid value '" + std::string(value) + "' for " + key);
}

}  // namespace

TrackerConfig parse_config(std::istream& in) {
  TrackerConfig cfg;
  using Setter = std::function<void(std::string_view, std::size_t)>;
  auto real = [](double& field) -> Setter {
    return [&field](std::string_view v, std::size_t n) { field = parse_double(v, n); };
  };
  auto integer = [](std::int64_t& field) -> Setter {
    return [&field](std::string_view v, std::size_t n) { field = parse_int(v, n); };
  };
  const std::map<std::string, Setter, std::less<>> setters{
      {"measurement_weight", real(cfg.measurement_weight)},
      {"weight_distance", real(cfg.feature_weights[0])},
      {"weight_area", real(cfg.feature_weights[1])},
      {"weight_shape", real(cfg.feature_weights[2])},
      {"weight_color", real(cfg.feature_weights[3])},
      {"match_threshold", real(cfg.match_threshold)},
      {"max_waiting_frames", integer(cfg.max_waiting_frames)},
      {"min_trajectory_frames", integer(cfg.min_trajectory_frames)},
      {"min_spatial_extent", real(cfg.min_spatial_extent)},
      {"max_waiting_ratio", real(cfg.max_waiting_ratio)},
      {"histogram_bins",
       [&cfg](std::string_view v, std::size_t n) {
         const std::int64_t bins = parse_int(v, n);
         if (bins < 1) throw Error(ErrorKind::config, "histogram_bins must be positive");
         cfg.histogram_bins = static_cast<std::size_t>(bins);
       }},
      {"assignment_policy",
       [&cfg](std::string_view v, std::size_t) {
         cfg.assignment_policy = parse_enum(
             v, {AssignmentPolicy::greedy_global, AssignmentPolicy::per_track}, "assignment_policy");
       }},
      {"eval_iou_threshold", real(cfg.eval_iou_threshold)},
      {"eval_association",
       [&cfg](std::string_view v, std::size_t) {
         cfg.eval_association = parse_enum(
             v, {AssociationMethod::greedy, AssociationMethod::hungarian}, "eval_association");
       }},
      {"motion_model",
       [&cfg](std::string_view v, std::size_t) {
         cfg.motion_model = parse_enum(
             v, {MotionModel::constant_velocity, MotionModel::identity}, "motion_model");
       }},
      {"process_noise_position", real(cfg.process_noise_position)},
      {"process_noise_velocity", real(cfg.process_noise_velocity)},
      {"measurement_noise", real(cfg.measurement_noise)},
      {"initial_variance_position", real(cfg.initial_variance_position)},
      {"initial_variance_velocity", real(cfg.initial_variance_velocity)},
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::config, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(std::string_view(line).substr(0, eq));
    const std::string_view value = trim(std::string_view(line).substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw Error(ErrorKind::config, "line " + std::to_string(line_no) + ": unknown key '" +
                                         std::string(key) + "'");
    }
    try {
      it->second(value, line_no);
    } catch (const Error& e) {
      throw Error(ErrorKind::config, e.what());
    }
  }
  cfg.validate();
  return cfg;
}

TrackerConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config, "cannot open config file " + path.string());
  return parse_config(in);
}

void write_config(std::ostream& out, const TrackerConfig& cfg) {
  auto kv = [&out](const char* key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  kv("measurement_weight", format_number(cfg.measurement_weight));
  kv("weight_distance", format_number(cfg.feature_weights[0]));
  kv("weight_area", format_number(cfg.feature_weights[1]));
  kv("weight_shape", format_number(cfg.feature_weights[2]));
  kv("weight_color", format_number(cfg.feature_weights[3]));
  kv("match_threshold", format_number(cfg.match_threshold));
  kv("max_waiting_frames", std::to_string(cfg.max_waiting_frames));
  kv("min_trajectory_frames", std::to_string(cfg.min_trajectory_frames));
  kv("min_spatial_extent", format_number(cfg.min_spatial_extent));
  kv("max_waiting_ratio", format_number(cfg.max_waiting_ratio));
  kv("histogram_bins", std::to_string(cfg.histogram_bins));
  kv("assignment_policy", to_string(cfg.assignment_policy));
  kv("eval_iou_threshold", format_number(cfg.eval_iou_threshold));
  kv("eval_association", to_string(cfg.eval_association));
  kv("motion_model", to_string(cfg.motion_model));
  kv("process_noise_position", format_number(cfg.process_noise_position));
  kv("process_noise_velocity", format_number(cfg.process_noise_velocity));
  kv("measurement_noise", format_number(cfg.measurement_noise));
  kv("initial_variance_position", format_number(cfg.initial_variance_position));
  kv("initial_variance_velocity", format_number(cfg.initial_variance_velocity));
}

// ---------------------------------------------------------------------------
// Report and scenario JSON
// ---------------------------------------------------------------------------

std::string report_json(const EvalReport& report, const TrackerConfig& cfg) {
  json j;
  j["m1"] = report.m1;
  j["m2"] = report.m2;
  j["m3"] = report.m3;
  j["m_bar"] = report.m_bar;
  j["frames"] = report.frames;
  j["fps"] = report.fps ? json(*report.fps) : json(nullptr);
  j["iou_threshold"] = cfg.eval_iou_threshold;
  j["association"] = to_string(cfg.eval_association);
  j["notes"] = "ground-truth objects without matches count 0 in m1 and are left out of m2";
  json gts = json::array();
  for (const GtBreakdown& g : report.gt_objects) {
    gts.push_back({{"gt_id", g.gt_id},
                   {"lifetime", g.lifetime},
                   {"matched_frames", g.matched_frames},
                   {"distinct_tracks", g.distinct_tracks}});
  }
  j["ground_truth"] = std::move(gts);
  json tracks = json::array();
  for (const TrackBreakdown& t : report.tracks) {
    tracks.push_back({{"track_id", t.track_id},
                      {"length", t.length},
                      {"matched_frames", t.matched_frames},
                      {"distinct_gt", t.distinct_gt}});
  }
  j["tracks"] = std::move(tracks);
  return j.dump(2) + "\n";
}

namespace {

json box_json(const ObjectState& s) { return json::array({s.x, s.y, s.l, s.h}); }

ObjectState box_from(const json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorKind::config, "box must be [x, y, l, h]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

}  // namespace

std::string scenario_json(const ScenarioSpec& spec) {
  json j;
  j["seed"] = spec.seed;
  j["duration"] = spec.duration;
  j["histogram_bins"] = spec.histogram_bins;
  j["scene_width"] = spec.scene_width;
  j["scene_height"] = spec.scene_height;
  const Perturbations& p = spec.perturbations;
  j["perturbations"] = {{"drop_probability", p.drop_probability},
                        {"burst_probability", p.burst_probability},
                        {"burst_min", p.burst_min},
                        {"burst_max", p.burst_max},
                        {"position_jitter_sigma", p.position_jitter_sigma},
                        {"size_jitter_sigma", p.size_jitter_sigma},
                        {"histogram_noise", p.histogram_noise},
                        {"clutter_rate", p.clutter_rate},
                        {"clutter_lifetime", p.clutter_lifetime},
                        {"clutter_extent", p.clutter_extent}};
  json objects = json::array();
  for (const ObjectScript& obj : spec.objects) {
    json o;
    o["id"] = obj.id;
    o["role"] = obj.role == ObjectRole::target ? "target" : "clutter";
    json wps = json::array();
    for (const Waypoint& w : obj.waypoints) wps.push_back({{"frame", w.frame}, {"box", box_json(w.state)}});
    o["waypoints"] = std::move(wps);
    o["histogram"] = obj.histogram;
    json gaps = json::array();
    for (const FrameInterval& g : obj.gaps) gaps.push_back({{"start", g.start}, {"length", g.length}});
    o["gaps"] = std::move(gaps);
    objects.push_back(std::move(o));
  }
  j["objects"] = std::move(objects);
  return j.dump(2) + "\n";
}

ScenarioSpec parse_scenario(std::istream& in) {
  ScenarioSpec spec;
  try {
    const json j = json::parse(in);
    spec.seed = j.value("seed", spec.seed);
    spec.duration = j.value("duration", spec.duration);
    spec.histogram_bins = j.value("histogram_bins", spec.histogram_bins);
    spec.scene_width = j.value("scene_width", spec.scene_width);
    spec.scene_height = j.value("scene_height", spec.scene_height);
    if (j.contains("perturbations")) {
      const json& pj = j["perturbations"];
      Perturbations& p = spec.perturbations;
      p.drop_probability = pj.value("drop_probability", p.drop_probability);
      p.burst_probability = pj.value("burst_probability", p.burst_probability);
      p.burst_min = pj.value("burst_min", p.burst_min);
      p.burst_max = pj.value("burst_max", p.burst_max);
      p.position_jitter_sigma = pj.value("position_jitter_sigma", p.position_jitter_sigma);
      p.size_jitter_sigma = pj.value("size_jitter_sigma", p.size_jitter_sigma);
      p.histogram_noise = pj.value("histogram_noise", p.histogram_noise);
      p.clutter_rate = pj.value("clutter_rate", p.clutter_rate);
      p.clutter_lifetime = pj.value("clutter_lifetime", p.clutter_lifetime);
      p.clutter_extent = pj.value("clutter_extent", p.clutter_extent);
    }
    for (const json& o : j.value("objects", json::array())) {
      ObjectScript obj;
      obj.id = o.at("id").get<std::int64_t>();
      obj.role = o.value("role", std::string("target")) == "clutter" ? ObjectRole::clutter
                                                                     : ObjectRole::target;
      for (const json& w : o.at("waypoints")) {
        obj.waypoints.push_back({w.at("frame").get<FrameId>(), box_from(w.at("box"))});
      }
      if (o.contains("histogram")) {
        obj.histogram = o["histogram"].get<std::vector<double>>();
      } else {
        obj.histogram = make_histogram(spec.histogram_bins,
                                       static_cast<std::size_t>(o.value("peak_bin", 0)), 2000.0);
      }
      for (const json& g : o.value("gaps", json::array())) {
        obj.gaps.push_back({g.at("start").get<FrameId>(), g.at("length").get<FrameId>()});
      }
      spec.objects.push_back(std::move(obj));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::config, std::string("scenario: ") + e.what());
  }
  spec.validate();
  return spec;
}

}  // namespace mft

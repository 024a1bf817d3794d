#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "mft/core_types.hpp"
#include "mft/metrics.hpp"

namespace mft {

/// Random source of the scenario generator. Raw bits come from
/// std::mt19937_64, whose output sequence is fixed by the C++ standard; the
/// conversions below are implemented here rather than taken from
/// <random>'s distributions, whose algorithms are implementation-defined.
///   uniform()      (bits >> 11) * 2^-53, in [0, 1)
///   normal()       Box-Muller on u1 = 1 - uniform(), u2 = uniform(), cosine branch
///   uniform_int()  lo + floor(uniform() * (hi - lo + 1))
///   poisson()      Knuth's product-of-uniforms method
class ScenarioRng {
 public:
  explicit ScenarioRng(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double normal();
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  std::int64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

struct Waypoint {
  FrameId frame = 0;
  ObjectState state;
};

struct FrameInterval {
  FrameId start = 0;
  FrameId length = 0;
};

enum class ObjectRole { target, clutter };

/// One scripted object. Its box moves piecewise-linearly through the
/// waypoints (ascending frames) and exists from the first waypoint frame to
/// the last. Targets become ground truth; scripted clutter does not.
struct ObjectScript {
  std::int64_t id = 0;
  ObjectRole role = ObjectRole::target;
  std::vector<Waypoint> waypoints;
  std::vector<double> histogram;     // base histogram, histogram_bins long
  std::vector<FrameInterval> gaps;   // frames where the detector misses it
};

struct Perturbations {
  double drop_probability = 0.0;        // independent per-frame miss
  double burst_probability = 0.0;       // chance per frame that a miss burst starts
  FrameId burst_min = 1;
  FrameId burst_max = 1;
  double position_jitter_sigma = 0.0;   // pixels
  double size_jitter_sigma = 0.0;       // pixels
  double histogram_noise = 0.0;         // multiplicative, per bin
  double clutter_rate = 0.0;            // expected random clutter detections per frame
  FrameId clutter_lifetime = 10;        // each blob lives 1..clutter_lifetime frames
  double clutter_extent = 4.0;          // max spread of a blob's centers, pixels
};

struct ScenarioSpec {
  std::uint64_t seed = 0;
  FrameId duration = 1;                 // frames 0 .. duration-1
  std::size_t histogram_bins = 96;
  double scene_width = 1920.0;
  double scene_height = 1080.0;
  std::vector<ObjectScript> objects;
  Perturbations perturbations;

  /// Throws ErrorKind::config.
  void validate() const;
};

/// Where a synthetic detection came from.
struct DetectionLabel {
  std::int64_t source = 0;   // object script id, or random clutter id
  bool clutter = false;
};

inline constexpr std::int64_t kRandomClutterIdBase = 1'000'000;

struct Scenario {
  std::vector<GroundTruthObject> ground_truth;   // targets only
  std::vector<Frame> frames;                     // one per frame, possibly empty
  std::vector<std::vector<DetectionLabel>> labels;  // parallel to frames[i].detections
};

/// Histogram with `floor` counts in every bin plus a triangular bump of
/// total height `peak` centred on `peak_bin` (half-width 2 bins).
std::vector<double> make_histogram(std::size_t bins, std::size_t peak_bin, double peak,
                                   double floor = 20.0);

/// Box of a script at `frame` by linear interpolation. Throws
/// ErrorKind::input if the object does not exist at that frame.
ObjectState interpolate(const ObjectScript& script, FrameId frame);

/// Deterministic: the result is a pure function of `spec`.
///
/// Random draws happen in this order, and only for non-zero parameters:
/// per frame, per object script (in list order) when it exists: burst start
/// (uniform, then uniform_int length), independent drop (uniform), position
/// jitter (normal x2), size jitter (normal x2), histogram noise (normal per
/// bin); then random clutter: spawn count (poisson), and per new blob its
/// center (uniform x2), lifetime (uniform_int), size (uniform x2), peak bin
/// (uniform_int); then per live blob its offset (uniform x2).
Scenario generate(const ScenarioSpec& spec);

/// Reference identity assignment for a small scenario: per frame, every
/// injective matching of ground-truth objects to detections is enumerated
/// and the one with the largest summed IoU (pairs below the IoU threshold
/// excluded) wins. Returns, per ground-truth object, its detection id at
/// each frame where it was assigned.
struct ReferenceTrajectory {
  std::int64_t gt_id = 0;
  std::map<FrameId, DetectionId> detections;
};

inline constexpr std::size_t kOracleMaxObjects = 5;
inline constexpr std::size_t kOracleMaxFrames = 200;
inline constexpr std::size_t kOracleMaxDetections = 8;

/// Throws ErrorKind::input when the instance exceeds the oracle limits.
std::vector<ReferenceTrajectory> brute_force_tracks(std::span<const GroundTruthObject> gt,
                                                    std::span<const Frame> frames,
                                                    const TrackerConfig& cfg);

namespace presets {

/// `objects` well-separated targets crossing the scene in parallel lanes,
/// each with a distinct histogram and a mid-sequence change of direction.
ScenarioSpec perfect(std::size_t objects = 5, FrameId duration = 500, std::uint64_t seed = 1);

/// Throughput workload: randomly wandering targets plus random clutter and
/// mild detector noise.
ScenarioSpec bench(std::size_t objects = 5, FrameId duration = 5000, double clutter_rate = 5.0,
                   std::uint64_t seed = 7);

/// Two targets plus ten scripted clutter blobs: short-lived, stationary,
/// and intermittently detected ones.
ScenarioSpec clutter(std::uint64_t seed = 3);

}  // namespace presets

}  // namespace mft

#include "mft/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mft {

// ---------------------------------------------------------------------------
// Random source
// ---------------------------------------------------------------------------

double ScenarioRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double ScenarioRng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::int64_t ScenarioRng::uniform_int(std::int64_t lo, std::int64_t hi) {
  const double span = static_cast<double>(hi - lo + 1);
  return lo + std::min(hi - lo, static_cast<std::int64_t>(uniform() * span));
}

std::int64_t ScenarioRng::poisson(double mean) {
  const double limit = std::exp(-mean);
  std::int64_t k = 0;
  double product = uniform();
  while (product > limit) {
    ++k;
    product *= uniform();
  }
  return k;
}

// ---------------------------------------------------------------------------
// Scripts
// ---------------------------------------------------------------------------

std::vector<double> make_histogram(std::size_t bins, std::size_t peak_bin, double peak,
                                   double floor) {
  std::vector<double> h(bins, floor);
  for (std::int64_t off = -2; off <= 2; ++off) {
    const std::int64_t k = static_cast<std::int64_t>(peak_bin) + off;
    if (k < 0 || k >= static_cast<std::int64_t>(bins)) continue;
    h[static_cast<std::size_t>(k)] += peak * (3.0 - static_cast<double>(std::abs(off))) / 9.0;
  }
  return h;
}

ObjectState interpolate(const ObjectScript& script, FrameId frame) {
  const auto& wp = script.waypoints;
  if (wp.empty() || frame < wp.front().frame || frame > wp.back().frame) {
    throw Error(ErrorKind::input, "object " + std::to_string(script.id) +
                                      " does not exist at frame " + std::to_string(frame));
  }
  auto next = std::lower_bound(wp.begin(), wp.end(), frame,
                               [](const Waypoint& w, FrameId f) { return w.frame < f; });
  if (next->frame == frame) return next->state;
  auto prev = std::prev(next);
  const double t = static_cast<double>(frame - prev->frame) /
                   static_cast<double>(next->frame - prev->frame);
  const ObjectState& a = prev->state;
  const ObjectState& b = next->state;
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.l + t * (b.l - a.l),
          a.h + t * (b.h - a.h)};
}

void ScenarioSpec::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::config, what); };
  auto prob = [](double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; };
  if (duration < 1) fail("scenario duration must be at least one frame");
  if (histogram_bins < 1 || histogram_bins > kRawHistogramBins) {
    fail("scenario histogram_bins must be in 1..768");
  }
  if (!(scene_width > 0.0) || !(scene_height > 0.0)) fail("scene size must be positive");
  const Perturbations& p = perturbations;
  if (!prob(p.drop_probability)) fail("drop_probability must be in [0, 1]");
  if (!prob(p.burst_probability)) fail("burst_probability must be in [0, 1]");
  if (p.burst_min < 1 || p.burst_max < p.burst_min) fail("burst lengths must satisfy 1 <= min <= max");
  for (double s : {p.position_jitter_sigma, p.size_jitter_sigma, p.histogram_noise,
                   p.clutter_rate, p.clutter_extent}) {
    if (!std::isfinite(s) || s < 0.0) fail("perturbation magnitudes must be non-negative");
  }
  if (p.clutter_lifetime < 1) fail("clutter_lifetime must be at least one frame");

  for (const ObjectScript& obj : objects) {
    const std::string who = "object " + std::to_string(obj.id);
    if (obj.waypoints.empty()) fail(who + " has no waypoints");
    for (std::size_t i = 0; i < obj.waypoints.size(); ++i) {
      if (!obj.waypoints[i].state.valid()) fail(who + " has an invalid waypoint box");
      if (i > 0 && obj.waypoints[i].frame <= obj.waypoints[i - 1].frame) {
        fail(who + " waypoints must have strictly increasing frames");
      }
    }
    if (obj.histogram.size() != histogram_bins) fail(who + " histogram has the wrong length");
    for (double c : obj.histogram) {
      if (!std::isfinite(c) || c < 0.0) fail(who + " histogram counts must be non-negative");
    }
    for (const FrameInterval& g : obj.gaps) {
      if (g.length < 0) fail(who + " has a negative gap length");
    }
  }
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

namespace {

constexpr double kJitterClip = 3.0;

double clipped_normal(ScenarioRng& rng) {
  return std::clamp(rng.normal(), -kJitterClip, kJitterClip);
}

bool in_gap(const ObjectScript& script, FrameId frame) {
  return std::any_of(script.gaps.begin(), script.gaps.end(), [&](const FrameInterval& g) {
    return frame >= g.start && frame < g.start + g.length;
  });
}

struct Blob {
  std::int64_t id;
  double cx, cy, l, h;
  FrameId remaining;
  std::vector<double> histogram;
};

}  // namespace

Scenario generate(const ScenarioSpec& spec) {
  spec.validate();
  const Perturbations& p = spec.perturbations;
  ScenarioRng rng(spec.seed);

  Scenario out;
  for (const ObjectScript& obj : spec.objects) {
    if (obj.role != ObjectRole::target) continue;
    GroundTruthObject gt{obj.id, {}};
    for (FrameId f = obj.waypoints.front().frame; f <= obj.waypoints.back().frame; ++f) {
      if (f >= 0 && f < spec.duration) gt.states.emplace(f, interpolate(obj, f));
    }
    if (!gt.states.empty()) out.ground_truth.push_back(std::move(gt));
  }

  const double mean_life = (static_cast<double>(p.clutter_lifetime) + 1.0) / 2.0;
  const double spawn_rate = p.clutter_rate / mean_life;
  std::vector<FrameId> burst_left(spec.objects.size(), 0);
  std::vector<Blob> blobs;
  std::int64_t next_blob = kRandomClutterIdBase;

  out.frames.resize(static_cast<std::size_t>(spec.duration));
  out.labels.resize(static_cast<std::size_t>(spec.duration));
  for (FrameId f = 0; f < spec.duration; ++f) {
    Frame& frame = out.frames[static_cast<std::size_t>(f)];
    auto& labels = out.labels[static_cast<std::size_t>(f)];
    frame.frame_id = f;
    DetectionId next_det = 0;

    for (std::size_t oi = 0; oi < spec.objects.size(); ++oi) {
      const ObjectScript& obj = spec.objects[oi];
      if (f < obj.waypoints.front().frame || f > obj.waypoints.back().frame) continue;

      bool missed = in_gap(obj, f);
      if (p.burst_probability > 0.0 && burst_left[oi] == 0 &&
          rng.uniform() < p.burst_probability) {
        burst_left[oi] = rng.uniform_int(p.burst_min, p.burst_max);
      }
      if (burst_left[oi] > 0) {
        missed = true;
        --burst_left[oi];
      }
      if (p.drop_probability > 0.0 && rng.uniform() < p.drop_probability) missed = true;

      ObjectState s = interpolate(obj, f);
      if (p.position_jitter_sigma > 0.0) {
        s.x += p.position_jitter_sigma * clipped_normal(rng);
        s.y += p.position_jitter_sigma * clipped_normal(rng);
      }
      if (p.size_jitter_sigma > 0.0) {
        s.l = std::max(1.0, s.l + p.size_jitter_sigma * clipped_normal(rng));
        s.h = std::max(1.0, s.h + p.size_jitter_sigma * clipped_normal(rng));
      }
      std::vector<double> hist = obj.histogram;
      if (p.histogram_noise > 0.0) {
        for (double& c : hist) c *= std::max(0.0, 1.0 + p.histogram_noise * clipped_normal(rng));
      }
      if (missed) continue;
      frame.detections.push_back({f, next_det++, s, ColorHistogram(std::move(hist))});
      labels.push_back({obj.id, obj.role == ObjectRole::clutter});
    }

    if (p.clutter_rate > 0.0) {
      const std::int64_t spawned = rng.poisson(spawn_rate);
      for (std::int64_t k = 0; k < spawned; ++k) {
        Blob b;
        b.id = next_blob++;
        b.cx = rng.uniform() * spec.scene_width;
        b.cy = rng.uniform() * spec.scene_height;
        b.remaining = rng.uniform_int(1, p.clutter_lifetime);
        b.l = 20.0 + 40.0 * rng.uniform();
        b.h = 20.0 + 40.0 * rng.uniform();
        const auto peak = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(spec.histogram_bins) - 1));
        b.histogram = make_histogram(spec.histogram_bins, peak, 600.0);
        blobs.push_back(std::move(b));
      }
    }
    for (Blob& b : blobs) {
      // Uniform in a disc of diameter clutter_extent around the blob center.
      const double r = 0.5 * p.clutter_extent * std::sqrt(rng.uniform());
      const double theta = 2.0 * std::numbers::pi * rng.uniform();
      const ObjectState s{b.cx + r * std::cos(theta), b.cy + r * std::sin(theta), b.l, b.h};
      frame.detections.push_back({f, next_det++, s, ColorHistogram(b.histogram)});
      labels.push_back({b.id, true});
      --b.remaining;
    }
    std::erase_if(blobs, [](const Blob& b) { return b.remaining <= 0; });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force identity oracle
// ---------------------------------------------------------------------------

namespace {

struct Search {
  const std::vector<std::pair<std::int64_t, ObjectState>>& objects;
  const std::vector<Detection>& detections;
  double threshold;
  std::vector<int> current;  // detection index per object, -1 for none
  std::vector<int> best;
  double best_score = -1.0;
  std::vector<bool> used;

  void run(std::size_t i, double score) {
    if (i == objects.size()) {
      if (score > best_score) {
        best_score = score;
        best = current;
      }
      return;
    }
    for (std::size_t j = 0; j < detections.size(); ++j) {
      if (used[j]) continue;
      const double o = iou(objects[i].second, detections[j].state);
      if (o < threshold) continue;
      used[j] = true;
      current[i] = static_cast<int>(j);
      run(i + 1, score + o);
      used[j] = false;
    }
    current[i] = -1;
    run(i + 1, score);
  }
};

}  // namespace

std::vector<ReferenceTrajectory> brute_force_tracks(std::span<const GroundTruthObject> gt,
                                                    std::span<const Frame> frames,
                                                    const TrackerConfig& cfg) {
  if (gt.size() > kOracleMaxObjects || frames.size() > kOracleMaxFrames) {
    throw Error(ErrorKind::input, "instance too large for the brute-force oracle");
  }
  std::vector<ReferenceTrajectory> refs;
  for (const GroundTruthObject& obj : gt) refs.push_back({obj.id, {}});

  for (const Frame& frame : frames) {
    if (frame.detections.size() > kOracleMaxDetections) {
      throw Error(ErrorKind::input, "too many detections in frame " +
                                        std::to_string(frame.frame_id) +
                                        " for the brute-force oracle");
    }
    std::vector<std::pair<std::int64_t, ObjectState>> present;
    std::vector<std::size_t> ref_index;
    for (std::size_t g = 0; g < gt.size(); ++g) {
      auto it = gt[g].states.find(frame.frame_id);
      if (it == gt[g].states.end()) continue;
      present.emplace_back(gt[g].id, it->second);
      ref_index.push_back(g);
    }
    Search search{present, frame.detections, cfg.eval_iou_threshold,
                  std::vector<int>(present.size(), -1), {}, -1.0,
                  std::vector<bool>(frame.detections.size(), false)};
    search.run(0, 0.0);
    for (std::size_t i = 0; i < present.size(); ++i) {
      if (search.best[i] < 0) continue;
      refs[ref_index[i]].detections.emplace(
          frame.frame_id,
          frame.detections[static_cast<std::size_t>(search.best[i])].detection_id);
    }
  }
  return refs;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

namespace presets {

ScenarioSpec perfect(std::size_t objects, FrameId duration, std::uint64_t seed) {
  ScenarioSpec spec;
  spec.seed = seed;
  spec.duration = duration;
  const FrameId mid = duration / 2;
  for (std::size_t i = 0; i < objects; ++i) {
    const double k = static_cast<double>(i);
    const double vx = 1.0 + 0.4 * k;
    const ObjectState start{100.0 + 50.0 * k, 150.0 + 180.0 * k, 40.0 + 5.0 * k, 80.0 + 6.0 * k};
    ObjectScript obj;
    obj.id = static_cast<std::int64_t>(i) + 1;
    obj.waypoints.push_back({0, start});
    if (mid > 0 && mid < duration - 1) {
      ObjectState turn = start;
      turn.x += vx * static_cast<double>(mid);
      turn.y += 0.3 * static_cast<double>(mid);
      obj.waypoints.push_back({mid, turn});
    }
    ObjectState end = start;
    end.x += vx * static_cast<double>(duration - 1);
    end.y += 0.3 * static_cast<double>(mid) - 0.3 * static_cast<double>(duration - 1 - mid);
    if (duration > 1) obj.waypoints.push_back({duration - 1, end});
    obj.histogram = make_histogram(spec.histogram_bins, (8 + 18 * i) % spec.histogram_bins, 2000.0);
    spec.objects.push_back(std::move(obj));
  }
  return spec;
}

ScenarioSpec bench(std::size_t objects, FrameId duration, double clutter_rate,
                   std::uint64_t seed) {
  ScenarioSpec spec;
  spec.seed = seed;
  spec.duration = duration;
  ScenarioRng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  constexpr FrameId kLeg = 250;
  constexpr double kMargin = 100.0;
  for (std::size_t i = 0; i < objects; ++i) {
    ObjectScript obj;
    obj.id = static_cast<std::int64_t>(i) + 1;
    ObjectState s{kMargin + rng.uniform() * (spec.scene_width - 2 * kMargin),
                  kMargin + rng.uniform() * (spec.scene_height - 2 * kMargin),
                  40.0 + 30.0 * rng.uniform(), 80.0 + 60.0 * rng.uniform()};
    for (FrameId f = 0;; f += kLeg) {
      const FrameId at = std::min(f, duration - 1);
      obj.waypoints.push_back({at, s});
      if (at == duration - 1) break;
      s.x = std::clamp(s.x + (rng.uniform() - 0.5) * 600.0, kMargin, spec.scene_width - kMargin);
      s.y = std::clamp(s.y + (rng.uniform() - 0.5) * 600.0, kMargin, spec.scene_height - kMargin);
    }
    obj.histogram = make_histogram(spec.histogram_bins, (5 + 19 * i) % spec.histogram_bins, 2000.0);
    spec.objects.push_back(std::move(obj));
  }
  Perturbations& p = spec.perturbations;
  p.drop_probability = 0.02;
  p.position_jitter_sigma = 1.0;
  p.size_jitter_sigma = 1.0;
  p.histogram_noise = 0.05;
  p.clutter_rate = clutter_rate;
  p.clutter_lifetime = 10;
  p.clutter_extent = 4.0;
  return spec;
}

ScenarioSpec clutter(std::uint64_t seed) {
  ScenarioSpec spec;
  spec.seed = seed;
  spec.duration = 200;
  const std::size_t bins = spec.histogram_bins;

  auto linear = [](FrameId from, FrameId to, ObjectState a, double vx, double vy) {
    ObjectState b = a;
    b.x += vx * static_cast<double>(to - from);
    b.y += vy * static_cast<double>(to - from);
    return std::vector<Waypoint>{{from, a}, {to, b}};
  };

  // Real objects, detected on every frame.
  spec.objects.push_back({1, ObjectRole::target, linear(0, 199, {100, 200, 40, 80}, 1.5, 0.2),
                          make_histogram(bins, 10, 2000.0), {}});
  spec.objects.push_back({2, ObjectRole::target, linear(0, 199, {150, 850, 44, 90}, 1.2, -0.3),
                          make_histogram(bins, 40, 2000.0), {}});

  std::int64_t id = 101;
  // Short-lived: ten detections each.
  for (int i = 0; i < 4; ++i) {
    const FrameId start = 15 + 35 * i;
    spec.objects.push_back({id++, ObjectRole::clutter,
                            linear(start, start + 9, {700.0 + 250.0 * i, 420, 30, 30}, 1.0, 0.0),
                            make_histogram(bins, 60 + 3 * static_cast<std::size_t>(i), 800.0), {}});
  }
  // Stationary: 60 frames circling within one pixel of a fixed point.
  for (int i = 0; i < 3; ++i) {
    ObjectScript obj{id++, ObjectRole::clutter, {}, make_histogram(bins, 75 + 3 * static_cast<std::size_t>(i), 800.0), {}};
    const FrameId start = 30 + 40 * i;
    for (FrameId f = start; f < start + 60; ++f) {
      const double a = 0.7 * static_cast<double>(f);
      obj.waypoints.push_back({f, {800.0 + 300.0 * i + std::cos(a), 600.0 + std::sin(a), 36, 36}});
    }
    spec.objects.push_back(std::move(obj));
  }
  // Intermittent: detected every other frame while drifting.
  for (int i = 0; i < 3; ++i) {
    const FrameId start = 20 + 50 * i;
    ObjectScript obj{id++, ObjectRole::clutter,
                     linear(start, start + 79, {700.0 + 350.0 * i, 750, 32, 48}, 0.8, 0.0),
                     make_histogram(bins, 88 + 2 * static_cast<std::size_t>(i), 800.0), {}};
    for (FrameId f = start + 1; f < start + 80; f += 2) obj.gaps.push_back({f, 1});
    spec.objects.push_back(std::move(obj));
  }
  return spec;
}

}  // namespace presets

}  // namespace mft

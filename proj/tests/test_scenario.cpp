#include <gtest/gtest.h>

#include <map>
#include <set>

#include "mft/frame_tracker.hpp"
#include "mft/scenario.hpp"
#include "test_support.hpp"

namespace mft {
namespace {

ObjectScript target(std::int64_t id, FrameId start, FrameId end, ObjectState from, ObjectState to,
                    std::size_t peak) {
  return {id, ObjectRole::target, {{start, from}, {end, to}}, make_histogram(96, peak, 400.0), {}};
}

ScenarioSpec two_targets(FrameId duration) {
  ScenarioSpec spec;
  spec.seed = 5;
  spec.duration = duration;
  spec.objects.push_back(target(1, 0, duration - 1, {100, 100, 30, 50}, {100 + 1.5 * duration, 140, 30, 50}, 10));
  spec.objects.push_back(target(2, 0, duration - 1, {900, 600, 40, 40}, {900 - 1.2 * duration, 600, 40, 40}, 60));
  return spec;
}

std::vector<Trajectory> track(const Scenario& sc, const TrackerConfig& cfg = {}) {
  Engine engine(cfg);
  for (const Frame& f : sc.frames) engine.step(f.frame_id, f.detections);
  engine.finish();
  return engine.trajectories();
}

TEST(ScenarioRng, SameSeedSameStream) {
  ScenarioRng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    EXPECT_EQ(u, b.uniform());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    differs |= u != c.uniform();
  }
  EXPECT_TRUE(differs);
  for (int i = 0; i < 200; ++i) {
    const auto k = a.uniform_int(3, 7);
    EXPECT_GE(k, 3);
    EXPECT_LE(k, 7);
    EXPECT_GE(a.poisson(2.5), 0);
  }
}

TEST(Generate, Reproducible) {
  const ScenarioSpec spec = presets::bench(3, 300, 3.0, 11);
  const Scenario a = generate(spec), b = generate(spec);
  ASSERT_EQ(a.frames.size(), b.frames.size());
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    ASSERT_EQ(a.frames[i].detections, b.frames[i].detections);
  }
  EXPECT_EQ(a.ground_truth, b.ground_truth);
}

TEST(Generate, NoPerturbationsReproducesGroundTruth) {
  const Scenario sc = generate(two_targets(80));
  ASSERT_EQ(sc.ground_truth.size(), 2u);
  for (std::size_t i = 0; i < sc.frames.size(); ++i) {
    const Frame& f = sc.frames[i];
    ASSERT_EQ(f.detections.size(), 2u);
    for (std::size_t k = 0; k < f.detections.size(); ++k) {
      const auto& gt = sc.ground_truth[static_cast<std::size_t>(sc.labels[i][k].source - 1)];
      ASSERT_EQ(f.detections[k].state, gt.states.at(f.frame_id));
    }
  }
}

TEST(Generate, ScriptedGapRemovesExactlyThoseFrames) {
  ScenarioSpec spec = two_targets(60);
  spec.objects[0].gaps.push_back({20, 3});
  const Scenario sc = generate(spec);
  std::vector<FrameId> missing;
  for (const Frame& f : sc.frames) {
    bool seen = false;
    for (std::size_t k = 0; k < f.detections.size(); ++k) {
      seen |= sc.labels[static_cast<std::size_t>(f.frame_id)][k].source == 1;
    }
    if (!seen) missing.push_back(f.frame_id);
  }
  EXPECT_EQ(missing, (std::vector<FrameId>{20, 21, 22}));
}

TEST(Generate, ClutterStaysWithinExtentAndLifetime) {
  ScenarioSpec spec = two_targets(300);
  spec.perturbations.clutter_rate = 3.0;
  spec.perturbations.clutter_lifetime = 10;
  spec.perturbations.clutter_extent = 4.0;
  const Scenario sc = generate(spec);
  std::map<std::int64_t, std::pair<std::vector<double>, std::vector<double>>> blobs;
  std::map<std::int64_t, std::set<FrameId>> frames;
  for (std::size_t i = 0; i < sc.frames.size(); ++i) {
    for (std::size_t k = 0; k < sc.frames[i].detections.size(); ++k) {
      const DetectionLabel& l = sc.labels[i][k];
      if (l.source < kRandomClutterIdBase) continue;
      ASSERT_TRUE(l.clutter);
      const ObjectState& s = sc.frames[i].detections[k].state;
      blobs[l.source].first.push_back(s.x);
      blobs[l.source].second.push_back(s.y);
      frames[l.source].insert(sc.frames[i].frame_id);
    }
  }
  ASSERT_GT(blobs.size(), 50u);
  for (const auto& [id, pts] : blobs) {
    ASSERT_LE(testing::max_pairwise_distance(pts.first, pts.second), 4.0 + 1e-9);
    ASSERT_LE(frames[id].size(), 10u);
  }
}

TEST(Generate, ShortLivedClutterIsAlwaysNoise) {
  ScenarioSpec spec = two_targets(400);
  spec.perturbations.clutter_rate = 2.0;
  spec.perturbations.clutter_lifetime = 10;
  const Scenario sc = generate(spec);
  Engine engine(TrackerConfig{});
  for (const Frame& f : sc.frames) engine.step(f.frame_id, f.detections);
  engine.finish();
  std::map<std::pair<FrameId, DetectionId>, std::int64_t> source;
  for (std::size_t i = 0; i < sc.frames.size(); ++i) {
    for (std::size_t k = 0; k < sc.frames[i].detections.size(); ++k) {
      source[{sc.frames[i].frame_id, sc.frames[i].detections[k].detection_id}] = sc.labels[i][k].source;
    }
  }
  int clutter_tracks = 0;
  for (const Track& t : engine.tracks()) {
    bool has_clutter = false;
    for (const TrackSample& s : t.samples) {
      if (s.detection && source.at({s.frame, *s.detection}) >= kRandomClutterIdBase) has_clutter = true;
    }
    if (has_clutter) {
      ++clutter_tracks;
      EXPECT_EQ(t.status, TrackStatus::noise) << "track " << t.id;
    }
  }
  EXPECT_GT(clutter_tracks, 10);
  EXPECT_EQ(engine.trajectories().size(), 2u);
}

// Partition of (frame, detection) pairs into per-object sets.
using Partition = std::set<std::set<std::pair<FrameId, DetectionId>>>;

Partition engine_partition(const std::vector<Trajectory>& trajectories) {
  Partition out;
  for (const Trajectory& t : trajectories) {
    std::set<std::pair<FrameId, DetectionId>> s;
    for (const TrackSample& smp : t.samples) {
      if (smp.detection) s.insert({smp.frame, *smp.detection});
    }
    out.insert(s);
  }
  return out;
}

Partition oracle_partition(const std::vector<ReferenceTrajectory>& refs) {
  Partition out;
  for (const ReferenceTrajectory& r : refs) {
    std::set<std::pair<FrameId, DetectionId>> s;
    for (const auto& [f, d] : r.detections) s.insert({f, d});
    out.insert(s);
  }
  return out;
}

TEST(BruteForceOracle, AgreesWithEngineOnCleanScenario) {
  const Scenario sc = generate(two_targets(120));
  const TrackerConfig cfg;
  const auto refs = brute_force_tracks(sc.ground_truth, sc.frames, cfg);
  EXPECT_EQ(engine_partition(track(sc, cfg)), oracle_partition(refs));
}

TEST(BruteForceOracle, ShortGapBridgesLikeOracle) {
  ScenarioSpec spec = two_targets(120);
  spec.objects[0].gaps.push_back({50, 3});
  const Scenario sc = generate(spec);
  const TrackerConfig cfg;
  const auto refs = brute_force_tracks(sc.ground_truth, sc.frames, cfg);
  const auto out = track(sc, cfg);
  EXPECT_EQ(out.size(), 2u);
  EXPECT_EQ(engine_partition(out), oracle_partition(refs));
}

TEST(BruteForceOracle, LongGapSplitsWhereOracleDoesNot) {
  ScenarioSpec spec = two_targets(130);
  const TrackerConfig cfg;
  spec.objects[0].gaps.push_back({45, cfg.max_waiting_frames + 5});
  const Scenario sc = generate(spec);
  const auto refs = brute_force_tracks(sc.ground_truth, sc.frames, cfg);
  EXPECT_EQ(refs.size(), 2u);
  EXPECT_EQ(track(sc, cfg).size(), 3u);
}

TEST(BruteForceOracle, RefusesOversizeInstances) {
  const Scenario sc = generate(two_targets(kOracleMaxFrames + 1));
  try {
    brute_force_tracks(sc.ground_truth, sc.frames, TrackerConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::input);
  }
}

}  // namespace
}  // namespace mft

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "mft/io.hpp"

namespace mft {
namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::numeric;
}

TEST(Rebin, FullResolutionIsIdentity) {
  std::vector<double> raw(768);
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = static_cast<double>(i % 17);
  const ColorHistogram h = rebin(raw, 768);
  for (std::size_t i = 0; i < raw.size(); ++i) ASSERT_EQ(h[i], raw[i]);
}

TEST(Rebin, ThreeBinsAreChannelTotals) {
  std::vector<double> raw(768, 0.0);
  raw[0] = 1;
  raw[255] = 2;
  raw[256] = 3;
  raw[700] = 4;
  const ColorHistogram h = rebin(raw, 3);
  EXPECT_EQ(h[0], 3.0);
  EXPECT_EQ(h[1], 3.0);
  EXPECT_EQ(h[2], 4.0);
}

TEST(Rebin, GroupsOfEight) {
  std::vector<double> raw(768, 0.0);
  raw[0] = 5;
  raw[7] = 7;
  raw[8] = 1;
  const ColorHistogram h = rebin(raw, 96);
  EXPECT_EQ(h[0], 12.0);
  EXPECT_EQ(h[1], 1.0);
}

TEST(Rebin, RejectsBadShapes) {
  const std::vector<double> raw(768, 1.0);
  EXPECT_EQ(kind_of([&] { rebin(raw, 100); }), ErrorKind::config);
  EXPECT_EQ(kind_of([&] { rebin(raw, 9); }), ErrorKind::config);  // 3 does not divide 256
  const std::vector<double> short_raw(700, 1.0);
  EXPECT_EQ(kind_of([&] { rebin(short_raw, 96); }), ErrorKind::shape);
}

TEST(ReadDetections, EmptyInputGivesNoFrames) {
  std::istringstream in("# nothing here\n\n");
  EXPECT_TRUE(read_detections(in, 96).empty());
}

TEST(ReadDetections, GroupsRowsByFrame) {
  std::istringstream in("3,1,10,10,4,4,1,2,3\n1,0,5,5,2,2\n3,0,0,0,1,1,0,0,9\n");
  const auto frames = read_detections(in, 3);
  ASSERT_EQ(frames.size(), 2u);
  EXPECT_EQ(frames[0].frame_id, 1);
  EXPECT_EQ(frames[0].detections[0].histogram.size(), 3u);
  EXPECT_EQ(frames[0].detections[0].histogram[0], 0.0);
  ASSERT_EQ(frames[1].detections.size(), 2u);
  EXPECT_EQ(frames[1].detections[0].detection_id, 0);  // sorted by id within a frame
  EXPECT_EQ(frames[1].detections[0].histogram[2], 9.0);
  EXPECT_EQ(frames[1].detections[1].histogram[2], 3.0);
}

TEST(ReadDetections, ReportsLineNumbers) {
  std::istringstream shape("0,0,1,1,1,1,1,2,3\n0,1,1,1,1,1,1,2\n");
  try {
    read_detections(shape, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::shape);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  std::istringstream malformed("0,0,1,1,1,1\n0,x,1,1,1,1\n");
  try {
    read_detections(malformed, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::input);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  std::istringstream bad_box("0,0,1,1,0,1\n");
  EXPECT_EQ(kind_of([&] { read_detections(bad_box, 3); }), ErrorKind::input);
}

TEST(ReadDetections, RawHistogramsAreRebinned) {
  std::ostringstream row;
  row << "0,0,1,1,1,1";
  for (int i = 0; i < 768; ++i) row << ',' << (i < 8 ? 1 : 0);
  std::istringstream in(row.str());
  const auto frames = read_detections(in, 96);
  EXPECT_EQ(frames[0].detections[0].histogram[0], 8.0);
}

TEST(DetectionsRoundTrip, RandomFrames) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 1000.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Frame> frames;
    for (FrameId f = 0; f < 10; ++f) {
      Frame fr{f * 2, {}};
      for (DetectionId d = 0; d < static_cast<DetectionId>(rng() % 4); ++d) {
        std::vector<double> h(6);
        for (double& c : h) c = std::floor(u(rng));
        fr.detections.push_back({fr.frame_id, d, {u(rng), u(rng), u(rng), u(rng)}, ColorHistogram(h)});
      }
      if (!fr.detections.empty()) frames.push_back(std::move(fr));
    }
    std::ostringstream out;
    write_detections(out, frames);
    std::istringstream in(out.str());
    const auto back = read_detections(in, 6);
    ASSERT_EQ(back.size(), frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) ASSERT_EQ(back[i].detections, frames[i].detections);
  }
}

TEST(Config, ParsesAndRejects) {
  std::istringstream ok("# tuned\nmatch_threshold = 0.75\nweight_color = 0.5\nassignment_policy = per_track\n");
  const TrackerConfig cfg = parse_config(ok);
  EXPECT_EQ(cfg.match_threshold, 0.75);
  EXPECT_EQ(cfg.feature_weights[3], 0.5);
  EXPECT_EQ(cfg.assignment_policy, AssignmentPolicy::per_track);

  std::istringstream bad("match_threshold = 1.01\n");
  EXPECT_EQ(kind_of([&] { parse_config(bad); }), ErrorKind::config);
  std::istringstream unknown("speed = 3\n");
  EXPECT_EQ(kind_of([&] { parse_config(unknown); }), ErrorKind::config);
  std::istringstream garbled("match_threshold = high\n");
  EXPECT_EQ(kind_of([&] { parse_config(garbled); }), ErrorKind::config);
}

TEST(Config, RoundTrip) {
  TrackerConfig cfg;
  cfg.measurement_weight = 0.1 + 0.2;
  cfg.feature_weights = {2, 0.5, 0, 1.25};
  cfg.max_waiting_frames = 7;
  cfg.histogram_bins = 24;
  cfg.eval_association = AssociationMethod::hungarian;
  cfg.motion_model = MotionModel::identity;
  std::ostringstream out;
  write_config(out, cfg);
  std::istringstream in(out.str());
  EXPECT_EQ(parse_config(in), cfg);
}

TEST(GroundTruth, RoundTrip) {
  std::vector<GroundTruthObject> gt{{1, {{0, {1, 2, 3, 4}}, {1, {1.5, 2, 3, 4}}}}, {7, {{4, {9, 9, 9, 9}}}}};
  std::ostringstream out;
  write_ground_truth(out, gt);
  std::istringstream in(out.str());
  EXPECT_EQ(read_ground_truth(in), gt);
}

TEST(Trajectories, RoundTripKeepsHeldFlag) {
  std::vector<Trajectory> tr{{3, {{0, {1, 2, 3, 4}, 0}, {1, {1, 2, 3, 4}, std::nullopt}, {2, {2, 2, 3, 4}, 0}}}};
  std::ostringstream out;
  write_trajectories(out, tr);
  EXPECT_NE(out.str().find("3,1,1,2,3,4,1"), std::string::npos) << out.str();
  std::istringstream in(out.str());
  EXPECT_EQ(read_trajectories(in), tr);
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(3.0), "3");
  EXPECT_EQ(std::stod(format_number(0.1 + 0.2)), 0.1 + 0.2);
}

}  // namespace
}  // namespace mft

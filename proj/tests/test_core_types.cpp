#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "mft/core_types.hpp"
#include "test_support.hpp"

namespace mft {
namespace {

TEST(DiagonalHalf, WorkedExamples) {
  EXPECT_NEAR(diagonal_half({0, 0, 6, 8}), 5.0, 1e-9);
  EXPECT_NEAR(diagonal_half({0, 0, 3, 4}), 2.5, 1e-9);
  EXPECT_NEAR(diagonal_half({0, 0, std::sqrt(2.0), std::sqrt(2.0)}), 1.0, 1e-15);
}

TEST(ObjectState, Validity) {
  EXPECT_TRUE((ObjectState{1, 2, 3, 4}).valid());
  EXPECT_FALSE((ObjectState{1, 2, 0, 4}).valid());
  EXPECT_FALSE((ObjectState{1, 2, 3, -1}).valid());
  EXPECT_FALSE((ObjectState{std::numeric_limits<double>::quiet_NaN(), 2, 3, 4}).valid());
  EXPECT_FALSE((ObjectState{1, std::numeric_limits<double>::infinity(), 3, 4}).valid());
  EXPECT_THROW(validate({0, 0, 0, 1}), Error);
}

TEST(ColorHistogram, RejectsBadShapesAndCounts) {
  EXPECT_EQ(ColorHistogram(96).size(), 96u);
  EXPECT_THROW(ColorHistogram(std::size_t{0}), Error);
  EXPECT_THROW(ColorHistogram(std::size_t{769}), Error);
  EXPECT_THROW(ColorHistogram(std::vector<double>{1.0, -1.0}), Error);
  try {
    ColorHistogram(std::vector<double>(800, 1.0));
    FAIL() << "expected a shape error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::shape);
  }
}

TEST(TrackerConfig, DefaultsAreValid) {
  const TrackerConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_DOUBLE_EQ(cfg.measurement_weight, 0.7);
  EXPECT_DOUBLE_EQ(cfg.match_threshold, 0.8);
  EXPECT_EQ(cfg.max_waiting_frames, 20);
  EXPECT_EQ(cfg.min_trajectory_frames, 20);
  EXPECT_DOUBLE_EQ(cfg.min_spatial_extent, 5.0);
  EXPECT_DOUBLE_EQ(cfg.max_waiting_ratio, 0.40);
  EXPECT_EQ(cfg.histogram_bins, 96u);
  for (double w : cfg.feature_weights) EXPECT_DOUBLE_EQ(w, 1.0);
}

TEST(TrackerConfig, RejectsOutOfRangeFields) {
  auto rejects = [](auto mutate) {
    TrackerConfig cfg;
    mutate(cfg);
    try {
      cfg.validate();
    } catch (const Error& e) {
      return e.kind() == ErrorKind::config;
    }
    return false;
  };
  EXPECT_TRUE(rejects([](TrackerConfig& c) { c.match_threshold = 1.01; }));
  EXPECT_TRUE(rejects([](TrackerConfig& c) { c.measurement_weight = -0.1; }));
  EXPECT_TRUE(rejects([](TrackerConfig& c) { c.feature_weights = {0, 0, 0, 0}; }));
  EXPECT_TRUE(rejects([](TrackerConfig& c) { c.feature_weights[2] = -1; }));
  EXPECT_TRUE(rejects([](TrackerConfig& c) { c.max_waiting_frames = 0; }));
  EXPECT_TRUE(rejects([](TrackerConfig& c) { c.max_waiting_ratio = 1.5; }));
  EXPECT_TRUE(rejects([](TrackerConfig& c) { c.histogram_bins = 769; }));
  EXPECT_TRUE(rejects([](TrackerConfig& c) { c.eval_iou_threshold = 0.0; }));
  EXPECT_TRUE(rejects([](TrackerConfig& c) { c.min_spatial_extent = -2; }));
  EXPECT_FALSE(rejects([](TrackerConfig& c) { c.feature_weights = {1, 0, 0, 0}; }));
}

// The envelope-pruned incremental extent must equal the brute-force
// maximum pairwise distance after every insertion.
TEST(TrackSpatialExtent, MatchesBruteForcePairwise) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> step(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    Track t;
    std::vector<double> xs, ys;
    double x = 0.0, y = 0.0;
    const int n = 1 + static_cast<int>(rng() % 60);
    for (int i = 0; i < n; ++i) {
      if (rng() % 4 != 0) {  // repeated points are common for held tracks
        x += step(rng);
        y += step(rng);
      }
      t.record_center(x, y);
      xs.push_back(x);
      ys.push_back(y);
      ASSERT_NEAR(t.spatial_extent, testing::max_pairwise_distance(xs, ys), 1e-9);
    }
  }
}

}  // namespace
}  // namespace mft

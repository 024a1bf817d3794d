#include <gtest/gtest.h>

#include <random>

#include "mft/kalman.hpp"

namespace mft {
namespace {

void expect_state_near(const ObjectState& a, const ObjectState& b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.l, b.l, tol);
  EXPECT_NEAR(a.h, b.h, tol);
}

void expect_covariance_sane(const KalmanState& ks) {
  const Eigen::MatrixXd& p = ks.covariance;
  const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
  EXPECT_LE((p - p.transpose()).cwiseAbs().maxCoeff(), 1e-9 * scale);
  for (Eigen::Index i = 0; i < p.rows(); ++i) EXPECT_GE(p(i, i), 0.0);
}

TEST(KalmanPredict, IdentityTransitionKeepsState) {
  KalmanState ks = make_kalman_state({10, 20, 5, 8}, MotionModel::identity);
  const Prediction p = predict(ks);
  EXPECT_EQ(p.estimate, (ObjectState{10, 20, 5, 8}));
}

TEST(KalmanPredict, ConstantVelocityHandMultiply) {
  KalmanState ks = make_kalman_state({10, 20, 5, 8}, MotionModel::constant_velocity);
  ks.mean << 10, 20, 5, 8, 2, -1, 0, 0;
  const Prediction p = predict(ks);
  expect_state_near(p.estimate, {12, 19, 5, 8}, 1e-9);
  EXPECT_NEAR(p.filter.mean[4], 2.0, 1e-12);
  EXPECT_NEAR(p.filter.mean[5], -1.0, 1e-12);
}

TEST(KalmanPredict, IdentityWithoutNoiseIsIdempotent) {
  KalmanState ks = make_kalman_state({3, 4, 5, 6}, MotionModel::identity, {0, 0, 1, 1, 1});
  const Prediction once = predict(ks);
  const Prediction twice = predict(once.filter);
  EXPECT_EQ(twice.filter.mean, ks.mean);
  EXPECT_EQ(twice.estimate, once.estimate);
}

TEST(KalmanPredict, NonFiniteIsNumericError) {
  KalmanState ks = make_kalman_state({1, 1, 1, 1}, MotionModel::constant_velocity);
  ks.mean[4] = std::numeric_limits<double>::infinity();
  try {
    predict(ks);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::numeric);
  }
}

TEST(KalmanCorrect, AgreementIsFixedPoint) {
  const ObjectState s{10, 20, 5, 8};
  const KalmanState ks = make_kalman_state(s, MotionModel::constant_velocity);
  for (double w : {0.0, 0.3, 0.7, 1.0}) {
    expect_state_near(correct(ks, s, s, s, w).corrected, s, 1e-12);
  }
}

TEST(KalmanCorrect, BlendsMeasurementAndEstimate) {
  const KalmanState ks = make_kalman_state({20, 0, 10, 10}, MotionModel::constant_velocity);
  const Correction c = correct(ks, {20, 0, 10, 10}, ObjectState{10, 0, 10, 10}, {1, 1, 1, 1}, 0.7);
  expect_state_near(c.corrected, {13, 0, 10, 10}, 1e-9);
}

TEST(KalmanCorrect, MissingMeasurementHoldsPreviousCorrectedState) {
  const KalmanState ks = make_kalman_state({9, 9, 3, 3}, MotionModel::constant_velocity);
  const Correction c = correct(ks, {9, 9, 3, 3}, std::nullopt, {4, 4, 2, 2}, 0.7);
  EXPECT_EQ(c.corrected, (ObjectState{4, 4, 2, 2}));
  EXPECT_EQ(c.filter.mean, ks.mean);
  EXPECT_EQ(c.filter.covariance, ks.covariance);
}

TEST(KalmanCorrect, MeasurementPullsFilterMean) {
  // Predict first: the initial covariance has no position/velocity coupling.
  const Prediction p = predict(make_kalman_state({0, 0, 10, 10}, MotionModel::constant_velocity));
  const Correction c = correct(p.filter, p.estimate, ObjectState{4, 0, 10, 10}, {0, 0, 10, 10}, 0.7);
  EXPECT_GT(c.filter.mean[0], 0.0);
  EXPECT_LT(c.filter.mean[0], 4.0);
  EXPECT_GT(c.filter.mean[4], 0.0);  // velocity picks up the motion
}

TEST(KalmanProperties, CorrectedStateIsConvexCombination) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> pos(-100, 100), size(1, 50), unit(0, 1);
  for (int i = 0; i < 2000; ++i) {
    const ObjectState es{pos(rng), pos(rng), size(rng), size(rng)};
    const ObjectState ms{pos(rng), pos(rng), size(rng), size(rng)};
    const double w = unit(rng);
    const KalmanState ks = make_kalman_state(es, MotionModel::constant_velocity);
    const ObjectState cs = correct(ks, es, ms, es, w).corrected;
    auto between = [](double v, double a, double b) {
      return v >= std::min(a, b) - 1e-12 && v <= std::max(a, b) + 1e-12;
    };
    ASSERT_TRUE(between(cs.x, es.x, ms.x));
    ASSERT_TRUE(between(cs.y, es.y, ms.y));
    ASSERT_TRUE(between(cs.l, es.l, ms.l));
    ASSERT_TRUE(between(cs.h, es.h, ms.h));
  }
}

TEST(KalmanProperties, IdentityZeroNoisePredictCorrectFixedPoint) {
  const ObjectState s{5, 6, 7, 8};
  KalmanState ks = make_kalman_state(s, MotionModel::identity, {0, 0, 1, 0, 0});
  for (int i = 0; i < 10; ++i) {
    const Prediction p = predict(ks);
    const Correction c = correct(p.filter, p.estimate, s, s, 0.7);
    EXPECT_EQ(c.corrected, s);
    ks = c.filter;
  }
  EXPECT_EQ(project(ks), s);
}

TEST(KalmanProperties, CovarianceStaysSymmetricAndNonNegative) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> noise(0, 2);
  for (MotionModel model : {MotionModel::constant_velocity, MotionModel::identity}) {
    KalmanState ks = make_kalman_state({100, 100, 30, 60}, model);
    ObjectState prev{100, 100, 30, 60};
    for (int t = 0; t < 300; ++t) {
      const Prediction p = predict(ks);
      expect_covariance_sane(p.filter);
      std::optional<ObjectState> ms;
      if (t % 7 != 3) ms = ObjectState{100 + t + noise(rng), 100 + noise(rng), 30, 60};
      const Correction c = correct(p.filter, p.estimate, ms, prev, 0.7);
      expect_covariance_sane(c.filter);
      ks = c.filter;
      prev = c.corrected;
    }
  }
}

}  // namespace
}  // namespace mft

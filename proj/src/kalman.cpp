#include "mft/kalman.hpp"

#include <algorithm>

namespace mft {
namespace {

// Predicted sizes can cross zero under a shrinking size rate; the estimate
// keeps boxes valid by flooring width and height here.
constexpr double kMinExtent = 1e-3;

Eigen::Index dimension(MotionModel model) {
  return model == MotionModel::constant_velocity ? 8 : 4;
}

bool all_finite(const KalmanState& ks) {
  return ks.mean.allFinite() && ks.covariance.allFinite();
}

}  // namespace

KalmanNoise KalmanNoise::from(const TrackerConfig& cfg) {
  return {cfg.process_noise_position, cfg.process_noise_velocity, cfg.measurement_noise,
          cfg.initial_variance_position, cfg.initial_variance_velocity};
}

KalmanState make_kalman_state(const ObjectState& initial, MotionModel model,
                              const KalmanNoise& noise) {
  const Eigen::Index n = dimension(model);
  KalmanState ks;
  ks.model = model;
  ks.mean = Eigen::VectorXd::Zero(n);
  ks.mean.head<4>() << initial.x, initial.y, initial.l, initial.h;

  ks.transition = Eigen::MatrixXd::Identity(n, n);
  ks.covariance = Eigen::MatrixXd::Zero(n, n);
  ks.process_noise = Eigen::MatrixXd::Zero(n, n);
  ks.covariance.diagonal().head<4>().setConstant(noise.initial_position);
  ks.process_noise.diagonal().head<4>().setConstant(noise.process_position);
  if (model == MotionModel::constant_velocity) {
    ks.transition.topRightCorner<4, 4>().setIdentity();
    ks.covariance.diagonal().tail<4>().setConstant(noise.initial_velocity);
    ks.process_noise.diagonal().tail<4>().setConstant(noise.process_velocity);
  }
  ks.measurement_noise = Eigen::MatrixXd::Identity(4, 4) * noise.measurement;
  return ks;
}

ObjectState project(const KalmanState& ks) {
  return {ks.mean[0], ks.mean[1], std::max(ks.mean[2], kMinExtent),
          std::max(ks.mean[3], kMinExtent)};
}

Prediction predict(const KalmanState& ks) {
  Prediction out{ks, {}};
  KalmanState& next = out.filter;
  next.mean = ks.transition * ks.mean;
  next.covariance = ks.transition * ks.covariance * ks.transition.transpose() + ks.process_noise;
  next.covariance = 0.5 * (next.covariance + next.covariance.transpose()).eval();
  if (!all_finite(next)) {
    throw Error(ErrorKind::numeric, "Kalman prediction produced a non-finite state");
  }
  out.estimate = project(next);
  return out;
}

Correction correct(const KalmanState& ks, const ObjectState& estimate,
                   const std::optional<ObjectState>& measured,
                   const ObjectState& previous_corrected, double weight) {
  if (!measured) return {ks, previous_corrected};

  const ObjectState& ms = *measured;
  const double keep = 1.0 - weight;
  Correction out{ks,
                 {weight * ms.x + keep * estimate.x, weight * ms.y + keep * estimate.y,
                  weight * ms.l + keep * estimate.l, weight * ms.h + keep * estimate.h}};

  const Eigen::Index n = ks.mean.size();
  Eigen::MatrixXd obs = Eigen::MatrixXd::Zero(4, n);
  obs.leftCols<4>().setIdentity();

  Eigen::Vector4d z(ms.x, ms.y, ms.l, ms.h);
  const Eigen::Vector4d innovation = z - obs * ks.mean;
  const Eigen::MatrixXd s = obs * ks.covariance * obs.transpose() + ks.measurement_noise;
  const Eigen::MatrixXd gain = ks.covariance * obs.transpose() * s.inverse();

  // Joseph form keeps the covariance symmetric positive semi-definite.
  const Eigen::MatrixXd i_kh = Eigen::MatrixXd::Identity(n, n) - gain * obs;
  KalmanState& next = out.filter;
  next.mean = ks.mean + gain * innovation;
  next.covariance = i_kh * ks.covariance * i_kh.transpose() +
                    gain * ks.measurement_noise * gain.transpose();
  next.covariance = 0.5 * (next.covariance + next.covariance.transpose()).eval();
  return out;
}

}  // namespace mft

#pragma once

#include <optional>

#include "mft/core_types.hpp"

namespace mft {

struct KalmanNoise {
  double process_position = 1.0;
  double process_velocity = 0.01;
  double measurement = 1.0;
  double initial_position = 1.0;
  double initial_velocity = 10.0;

  static KalmanNoise from(const TrackerConfig& cfg);
};

/// Filter initialised at `initial` with zero velocity. The constant-velocity
/// model uses an 8-dimensional state [x, y, l, h, vx, vy, vl, vh]; the
/// identity model keeps only [x, y, l, h] with an identity transition.
KalmanState make_kalman_state(const ObjectState& initial, MotionModel model,
                              const KalmanNoise& noise = {});

/// Observable [x, y, l, h] part of a filter mean.
ObjectState project(const KalmanState& ks);

struct Prediction {
  KalmanState filter;
  ObjectState estimate;
};

/// Estimation step: mean <- transition * mean, P <- F P F^T + Q.
/// Throws ErrorKind::numeric if the result is not finite.
Prediction predict(const KalmanState& ks);

struct Correction {
  KalmanState filter;
  ObjectState corrected;
};

/// Correction step. With a measurement the emitted state is the blend
/// weight * measured + (1 - weight) * estimate, and the filter absorbs the
/// measurement through the usual gain so later predictions follow it.
/// Without one, the previous corrected state is held and the filter keeps
/// its predicted (covariance-inflated) state.
Correction correct(const KalmanState& ks, const ObjectState& estimate,
                   const std::optional<ObjectState>& measured,
                   const ObjectState& previous_corrected, double weight);

}  // namespace mft

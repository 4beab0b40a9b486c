// Copyright 2026 The bbox6d Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BBOX6D_METRICS_HPP_
#define BBOX6D_METRICS_HPP_

#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bbox6d/rotation.hpp"

namespace bbox6d {

/// Object pose: rotation and the object origin in the camera frame (meters).
struct Pose {
  UnitQuaterniond rotation;
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
};

/// |t_est - t_gt|, meters.
double TranslationalError(const Eigen::Vector3d& t_est,
                          const Eigen::Vector3d& t_gt);

/// arccos((tr(R_est R_gt^-1) - 1) / 2) in degrees, argument clamped to [-1, 1].
double RotationalError(const RotationMatrix<double>& r_est,
                       const RotationMatrix<double>& r_gt);

/// Same angle from quaternions: 2 atan2(|v|, |w|) of q_est^-1 q_gt.
double RotationalError(const UnitQuaterniond& q_est, const UnitQuaterniond& q_gt);

/// Mean over roll, pitch, yaw of the absolute angle difference, each wrapped
/// into [0, 180].
double AvgEulerError(const UnitQuaterniond& q_est, const UnitQuaterniond& q_gt);

constexpr double kMaxTranslationErrorM = 0.05;
constexpr double kMaxRotationErrorDeg = 5.0;

/// Strict: e_TE < 5 cm and e_RE < 5 deg.
bool PoseCorrect5cm5deg(const Pose& est, const Pose& gt);

struct LabeledPosePair {
  Pose estimate;
  Pose ground_truth;
  std::string label;
};

struct ObjectMetrics {
  std::size_t count = 0;
  double mean_euler_error_deg = 0.0;
  double accuracy_5cm5deg_pct = 0.0;
  double mean_translation_error_m = 0.0;
  double mean_rotation_error_deg = 0.0;
};

struct MetricReport {
  std::map<std::string, ObjectMetrics> per_label;
  ObjectMetrics overall;
};

/// Per-label and overall statistics. Sums run over sorted values, so the
/// result is bit-identical under any reordering of `pairs`.
MetricReport Aggregate(const std::vector<LabeledPosePair>& pairs);

/// Aligned text table, one row per label plus an "average" row.
std::string FormatTable(const MetricReport& report);

}  // namespace bbox6d

#endif  // BBOX6D_METRICS_HPP_

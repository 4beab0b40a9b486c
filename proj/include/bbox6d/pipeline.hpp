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

#ifndef BBOX6D_PIPELINE_HPP_
#define BBOX6D_PIPELINE_HPP_

#include <string>

#include <Eigen/Core>

#include "bbox6d/bbox_equation.hpp"
#include "bbox6d/camera.hpp"
#include "bbox6d/rotation.hpp"

namespace bbox6d {

/// Every `stride`-th point chosen so that exactly `count` points remain
/// (indices floor(i * n / count)). count <= 0 or count >= n keeps the cloud.
PointCloudd Subsample(const PointCloudd& cloud, Eigen::Index count);

struct EstimateRequest {
  std::string label = "object";
  CameraIntrinsicsd intrinsics;
  PointCloudd cloud;
  BBox2Dd bbox;
  UnitQuaterniond rotation;
  RecoverOptions<double> options;
  Eigen::Index subsample = 0;
};

struct EstimateRecord {
  std::string label;
  BBox2Dd bbox;
  UnitQuaterniond rotation;
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  Eigen::Vector3d camera_center = Eigen::Vector3d::Zero();
  CorrespondenceMethod method = CorrespondenceMethod::kIndirect;
  double z_guess = 0.0;
  // Diagnostics.
  double residual = 0.0;
  double condition = 0.0;
  /// Indices into the input cloud (before subsampling).
  Correspondences correspondences;
  Eigen::Vector4d side_vector_norms = Eigen::Vector4d::Zero();
  Eigen::Vector4d normalized_sides = Eigen::Vector4d::Zero();
  Eigen::Index points_used = 0;
  int refine_passes_used = 0;
  bool origin_inside = false;
};

/// Rotation + box -> translation, with diagnostics.
EstimateRecord RunEstimate(const EstimateRequest& request);

}  // namespace bbox6d

#endif  // BBOX6D_PIPELINE_HPP_

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

#ifndef BBOX6D_SYNTH_HPP_
#define BBOX6D_SYNTH_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include <Eigen/Core>

#include "bbox6d/bbox_equation.hpp"
#include "bbox6d/camera.hpp"
#include "bbox6d/metrics.hpp"
#include "bbox6d/rotation.hpp"

namespace bbox6d {

/// The eight corners (+-ex, +-ey, +-ez) of a box with the given half-sizes.
/// Corner i has x sign from bit 0, y from bit 1, z from bit 2 (bit clear =
/// negative), so x varies fastest. Extents must be positive.
PointCloudd CubeCorners(const Eigen::Vector3d& half_extents);

/// n points uniformly distributed on a sphere of the given radius.
PointCloudd SpherePoints(double radius, int n, std::mt19937_64& gen);

/// Projections of the eight box corners under `pose`, in CubeCorners order.
/// Zero extents are allowed. Throws kBehindCamera.
std::array<Eigen::Vector2d, 8> ProjectBoxCorners(const CameraIntrinsicsd& k,
                                                 const Pose& pose,
                                                 const Eigen::Vector3d& half_extents);

enum class CloudKind { kCorners, kSphere };

std::string ToString(CloudKind kind);
CloudKind ParseCloudKind(const std::string& name);

/// Default intrinsics: the 640x480 LineMod Kinect camera.
inline CameraIntrinsicsd DefaultIntrinsics() {
  return {572.4114, 573.57043, 325.2611, 242.04899};
}

struct SynthConfig {
  CameraIntrinsicsd intrinsics = DefaultIntrinsics();
  double depth_min = 0.5;
  double depth_max = 2.0;
  /// Lateral object offset, uniform in [-lateral_max, lateral_max] on x and y.
  double lateral_max = 0.3;
  /// When set, the lateral offset is instead chosen so that the object
  /// origin projects this many pixels (uniform in [min, max]) from the
  /// principal point, in a random direction.
  std::optional<std::array<double, 2>> pixel_offset;
  CloudKind cloud = CloudKind::kCorners;
  double half_extent_min = 0.02;
  double half_extent_max = 0.07;
  double sphere_radius_min = 0.04;
  double sphere_radius_max = 0.12;
  int sphere_points = 200;
};

struct SyntheticCase {
  CameraIntrinsicsd intrinsics;
  PointCloudd cloud;
  UnitQuaterniond gt_rotation;
  Eigen::Vector3d gt_translation = Eigen::Vector3d::Zero();
  BBox2Dd bbox;
  std::uint64_t seed = 0;
};

/// Deterministic per seed. The box is the exact tight projection of the
/// cloud under the ground-truth pose.
SyntheticCase SynthScene(std::uint64_t seed, const SynthConfig& config = {});

}  // namespace bbox6d

#endif  // BBOX6D_SYNTH_HPP_

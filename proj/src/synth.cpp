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

#include "bbox6d/synth.hpp"

#include <cmath>
#include <numbers>

#include "bbox6d/error.hpp"

namespace bbox6d {

namespace {

PointCloudd CornerCloud(const Eigen::Vector3d& e) {
  PointCloudd c(3, 8);
  for (int i = 0; i < 8; ++i) {
    c.col(i) << ((i & 1) ? e.x() : -e.x()), ((i & 2) ? e.y() : -e.y()),
        ((i & 4) ? e.z() : -e.z());
  }
  return c;
}

}  // namespace

PointCloudd CubeCorners(const Eigen::Vector3d& half_extents) {
  if (!(half_extents.array() > 0.0).all() || !half_extents.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "box extents must be positive");
  }
  return CornerCloud(half_extents);
}

PointCloudd SpherePoints(double radius, int n, std::mt19937_64& gen) {
  if (!(radius > 0.0) || n < 1) {
    throw Error(ErrorCode::kInvalidInput, "sphere needs radius > 0 and n >= 1");
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  PointCloudd c(3, n);
  for (int i = 0; i < n; ++i) {
    Eigen::Vector3d v;
    do {
      v << normal(gen), normal(gen), normal(gen);
    } while (v.norm() < 1e-9);
    c.col(i) = radius * v.normalized();
  }
  return c;
}

std::array<Eigen::Vector2d, 8> ProjectBoxCorners(
    const CameraIntrinsicsd& k, const Pose& pose,
    const Eigen::Vector3d& half_extents) {
  k.Validate();
  if (!(half_extents.array() >= 0.0).all()) {
    throw Error(ErrorCode::kInvalidInput, "box extents must be non-negative");
  }
  const RotationMatrix<double> r = QuatToMatrix(pose.rotation);
  const CameraCenter<double> cam = ToCameraCenter(r, Translation<double>{pose.translation});
  const PointCloudd corners = CornerCloud(half_extents);
  std::array<Eigen::Vector2d, 8> out;
  for (int i = 0; i < 8; ++i) {
    const PixelPoint<double> p = Project(k, r, cam, Eigen::Vector3d(corners.col(i)));
    out[static_cast<std::size_t>(i)] = {p.u, p.v};
  }
  return out;
}

std::string ToString(CloudKind kind) {
  return kind == CloudKind::kCorners ? "corners" : "sphere";
}

CloudKind ParseCloudKind(const std::string& name) {
  if (name == "corners") return CloudKind::kCorners;
  if (name == "sphere") return CloudKind::kSphere;
  throw Error(ErrorCode::kInvalidInput, "unknown cloud kind '" + name + "'");
}

SyntheticCase SynthScene(std::uint64_t seed, const SynthConfig& config) {
  config.intrinsics.Validate();
  if (!(config.depth_min > 0.0) || !(config.depth_max >= config.depth_min)) {
    throw Error(ErrorCode::kInvalidInput, "depth range must be positive");
  }
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(gen); };

  SyntheticCase c;
  c.seed = seed;
  c.intrinsics = config.intrinsics;
  if (config.cloud == CloudKind::kCorners) {
    const Eigen::Vector3d e(uniform(config.half_extent_min, config.half_extent_max),
                            uniform(config.half_extent_min, config.half_extent_max),
                            uniform(config.half_extent_min, config.half_extent_max));
    c.cloud = CubeCorners(e);
  } else {
    c.cloud = SpherePoints(
        uniform(config.sphere_radius_min, config.sphere_radius_max),
        config.sphere_points, gen);
  }
  const double radius = c.cloud.colwise().norm().maxCoeff();
  if (config.depth_min < 4.0 * radius) {
    throw Error(ErrorCode::kInvalidInput,
                "depth range must be at least 4x the cloud radius");
  }

  c.gt_rotation = RandomRotation(gen);
  const double depth = uniform(config.depth_min, config.depth_max);
  if (config.pixel_offset) {
    const auto [lo, hi] = *config.pixel_offset;
    const double dist = uniform(lo, hi);
    const double angle = uniform(0.0, 2.0 * std::numbers::pi);
    const CameraIntrinsicsd& k = config.intrinsics;
    const double du = dist * std::cos(angle), dv = dist * std::sin(angle);
    c.gt_translation << depth * du / k.fx, depth * dv / k.fy, depth;
  } else {
    c.gt_translation << uniform(-config.lateral_max, config.lateral_max),
        uniform(-config.lateral_max, config.lateral_max), depth;
  }

  const RotationMatrix<double> r = QuatToMatrix(c.gt_rotation);
  const CameraCenter<double> cam =
      ToCameraCenter(r, Translation<double>{c.gt_translation});
  try {
    c.bbox = TightBox(ProjectCloud(c.intrinsics, r, cam, c.cloud));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kBehindCamera) throw;
    throw Error(ErrorCode::kInvalidInput,
                "configuration places the cloud behind the camera");
  }
  return c;
}

}  // namespace bbox6d

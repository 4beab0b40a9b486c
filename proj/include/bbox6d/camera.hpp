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

#ifndef BBOX6D_CAMERA_HPP_
#define BBOX6D_CAMERA_HPP_

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "bbox6d/error.hpp"
#include "bbox6d/rotation.hpp"

namespace bbox6d {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

/// Object points as columns, in object-frame units (meters).
template <typename Scalar>
using PointCloud = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>;

using PointCloudd = PointCloud<double>;

/// Pinhole intrinsics in pixels. No skew.
template <typename Scalar>
struct CameraIntrinsics {
  Scalar fx = Scalar(1);
  Scalar fy = Scalar(1);
  Scalar cx = Scalar(0);
  Scalar cy = Scalar(0);

  Eigen::Matrix<Scalar, 3, 3> Matrix() const {
    Eigen::Matrix<Scalar, 3, 3> k;
    k << fx, Scalar(0), cx, Scalar(0), fy, cy, Scalar(0), Scalar(0), Scalar(1);
    return k;
  }

  void Validate() const {
    if (!(fx > Scalar(0)) || !(fy > Scalar(0)) || !std::isfinite(fx) ||
        !std::isfinite(fy) || !std::isfinite(cx) || !std::isfinite(cy)) {
      throw Error(ErrorCode::kInvalidInput,
                  "intrinsics need finite values and fx, fy > 0");
    }
  }
};

using CameraIntrinsicsd = CameraIntrinsics<double>;

template <typename Scalar>
struct PixelPoint {
  Scalar u;
  Scalar v;
  Scalar depth;
};

/// Camera center expressed in the object frame. This is the unknown the
/// bounding-box system solves for; it is not the reported translation.
template <typename Scalar>
struct CameraCenter {
  Vector3<Scalar> position = Vector3<Scalar>::Zero();
};

/// Object origin expressed in the camera frame (the reported translation).
template <typename Scalar>
struct Translation {
  Vector3<Scalar> value = Vector3<Scalar>::Zero();
};

template <typename Scalar>
Translation<Scalar> ToTranslation(const RotationMatrix<Scalar>& r,
                                  const CameraCenter<Scalar>& c) {
  return {-(r * c.position)};
}

template <typename Scalar>
CameraCenter<Scalar> ToCameraCenter(const RotationMatrix<Scalar>& r,
                                    const Translation<Scalar>& t) {
  return {-(r.transpose() * t.value)};
}

template <typename Scalar>
void ValidateCloud(const PointCloud<Scalar>& cloud) {
  if (cloud.cols() == 0) {
    throw Error(ErrorCode::kInvalidInput, "point cloud is empty");
  }
  if (!cloud.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "point cloud has non-finite values");
  }
}

/// True when the object-frame origin lies strictly inside the axis-aligned
/// bounds of the cloud.
template <typename Scalar>
bool OriginInsideBounds(const PointCloud<Scalar>& cloud) {
  if (cloud.cols() == 0) return false;
  const Vector3<Scalar> lo = cloud.rowwise().minCoeff();
  const Vector3<Scalar> hi = cloud.rowwise().maxCoeff();
  return (lo.array() < Scalar(0)).all() && (hi.array() > Scalar(0)).all();
}

constexpr double kMinDepth = 1e-12;

/// z [u v 1]^T = K R (X - T).
template <typename Scalar>
PixelPoint<Scalar> Project(const CameraIntrinsics<Scalar>& k,
                           const RotationMatrix<Scalar>& r,
                           const CameraCenter<Scalar>& camera,
                           const Vector3<Scalar>& point) {
  const Vector3<Scalar> p = r * (point - camera.position);
  if (!(p.z() > Scalar(kMinDepth))) {
    throw Error(ErrorCode::kBehindCamera,
                "point at or behind the camera plane (depth " +
                    std::to_string(static_cast<double>(p.z())) + ")");
  }
  return {k.fx * p.x() / p.z() + k.cx, k.fy * p.y() / p.z() + k.cy, p.z()};
}

/// Projects every column of `cloud`. Row 0 holds u, row 1 v, row 2 depth.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, Eigen::Dynamic> ProjectCloud(
    const CameraIntrinsics<Scalar>& k, const RotationMatrix<Scalar>& r,
    const CameraCenter<Scalar>& camera, const PointCloud<Scalar>& cloud) {
  Eigen::Matrix<Scalar, 3, Eigen::Dynamic> cam =
      r * (cloud.colwise() - camera.position);
  if (!(cam.row(2).array() > Scalar(kMinDepth)).all()) {
    throw Error(ErrorCode::kBehindCamera,
                "cloud has points at or behind the camera plane");
  }
  Eigen::Matrix<Scalar, 3, Eigen::Dynamic> out(3, cloud.cols());
  out.row(0) = (k.fx * cam.row(0).array() / cam.row(2).array() + k.cx).matrix();
  out.row(1) = (k.fy * cam.row(1).array() / cam.row(2).array() + k.cy).matrix();
  out.row(2) = cam.row(2);
  return out;
}

/// Camera center that places the object origin at pixel `center` and depth
/// `z_guess`: T0 = -z (K R)^{-1} [u0 v0 1]^T. Only the viewing ray is right;
/// the depth is a placeholder.
template <typename Scalar>
CameraCenter<Scalar> ProvisionalCameraCenter(const CameraIntrinsics<Scalar>& k,
                                             const RotationMatrix<Scalar>& r,
                                             const Vector2<Scalar>& center,
                                             Scalar z_guess) {
  if (!(z_guess > Scalar(0))) {
    throw Error(ErrorCode::kInvalidInput, "z_guess must be positive");
  }
  // (K R)^{-1} = R^T K^{-1}; K^{-1} is closed-form for a skew-free pinhole.
  const Vector3<Scalar> ray((center.x() - k.cx) / k.fx,
                            (center.y() - k.cy) / k.fy, Scalar(1));
  return {-z_guess * (r.transpose() * ray)};
}

}  // namespace bbox6d

#endif  // BBOX6D_CAMERA_HPP_

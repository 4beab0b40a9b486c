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

#ifndef BBOX6D_BBOX_EQUATION_HPP_
#define BBOX6D_BBOX_EQUATION_HPP_

#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Core>
#include <Eigen/SVD>

#include "bbox6d/camera.hpp"
#include "bbox6d/error.hpp"
#include "bbox6d/rotation.hpp"

namespace bbox6d {

/// Axis-aligned pixel rectangle. Valid boxes have x_left < x_right and
/// y_top < y_bottom; the geometry functions accept invalid ones so that
/// degeneracy surfaces as kDegenerateGeometry at solve time.
template <typename Scalar>
struct BBox2D {
  Scalar x_left = Scalar(0);
  Scalar y_top = Scalar(0);
  Scalar x_right = Scalar(0);
  Scalar y_bottom = Scalar(0);

  Vector2<Scalar> Center() const {
    return {(x_left + x_right) / Scalar(2), (y_top + y_bottom) / Scalar(2)};
  }

  bool IsValid() const {
    return std::isfinite(x_left) && std::isfinite(y_top) &&
           std::isfinite(x_right) && std::isfinite(y_bottom) &&
           x_left < x_right && y_top < y_bottom;
  }

  void Validate() const {
    if (!IsValid()) {
      throw Error(ErrorCode::kInvalidInput,
                  "bounding box needs x_left < x_right and y_top < y_bottom");
    }
  }
};

using BBox2Dd = BBox2D<double>;

/// Tight box around a set of projected points (rows u, v).
template <typename Derived>
BBox2D<typename Derived::Scalar> TightBox(const Eigen::MatrixBase<Derived>& uv) {
  return {uv.row(0).minCoeff(), uv.row(1).minCoeff(), uv.row(0).maxCoeff(),
          uv.row(1).maxCoeff()};
}

/// Indices of the cloud points touching each side of the box.
struct Correspondences {
  Eigen::Index left = 0;
  Eigen::Index right = 0;
  Eigen::Index top = 0;
  Eigen::Index bottom = 0;

  bool operator==(const Correspondences&) const = default;
};

enum class CorrespondenceMethod {
  kIndirect,  // project through a provisional camera center
  kDirect,    // rank the rotated coordinates, ignoring perspective
};

/// The 4x3 system A * T = x_box. Rows are ordered left, right, top, bottom.
template <typename Scalar>
struct BBoxSystem {
  Eigen::Matrix<Scalar, 4, 3> a;
  Vector4<Scalar> x_box;
  /// Normalized image coordinates of the sides: u_L, u_R, v_T, v_B.
  Vector4<Scalar> normalized;
};

namespace internal {

/// (argmin, argmax); ties go to the lowest index.
template <typename Derived>
std::pair<Eigen::Index, Eigen::Index> ArgExtremes(
    const Eigen::DenseBase<Derived>& row) {
  Eigen::Index lo = 0, hi = 0;
  for (Eigen::Index i = 1; i < row.size(); ++i) {
    if (row(i) < row(lo)) lo = i;
    if (row(i) > row(hi)) hi = i;
  }
  return {lo, hi};
}

template <typename Derived>
Correspondences FromExtremes(const Eigen::MatrixBase<Derived>& uv) {
  const auto [left, right] = ArgExtremes(uv.row(0));
  const auto [top, bottom] = ArgExtremes(uv.row(1));
  return {left, right, top, bottom};
}

}  // namespace internal

/// Point-to-side correspondences by projecting the cloud from the
/// provisional camera center on the box-center ray at depth `z_guess`.
template <typename Scalar>
Correspondences IndirectCorrespondences(const CameraIntrinsics<Scalar>& k,
                                        const RotationMatrix<Scalar>& r,
                                        const BBox2D<Scalar>& box,
                                        const PointCloud<Scalar>& cloud,
                                        Scalar z_guess = Scalar(100)) {
  ValidateCloud(cloud);
  const CameraCenter<Scalar> provisional =
      ProvisionalCameraCenter(k, r, box.Center(), z_guess);
  try {
    return internal::FromExtremes(ProjectCloud(k, r, provisional, cloud));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kBehindCamera) throw;
    throw Error(ErrorCode::kDegenerateGeometry,
                "z_guess is smaller than the cloud extent; points fall behind "
                "the provisional camera");
  }
}

/// Correspondences from the extremes of R * X alone (far-object limit).
template <typename Scalar>
Correspondences DirectCorrespondences(const RotationMatrix<Scalar>& r,
                                      const PointCloud<Scalar>& cloud) {
  ValidateCloud(cloud);
  const Eigen::Matrix<Scalar, 3, Eigen::Dynamic> rotated = r * cloud;
  return internal::FromExtremes(rotated);
}

template <typename Scalar>
BBoxSystem<Scalar> BuildBoxSystem(const CameraIntrinsics<Scalar>& k,
                                  const RotationMatrix<Scalar>& r,
                                  const BBox2D<Scalar>& box,
                                  const PointCloud<Scalar>& cloud,
                                  const Correspondences& corr) {
  const Eigen::Index n = cloud.cols();
  for (Eigen::Index i : {corr.left, corr.right, corr.top, corr.bottom}) {
    if (i < 0 || i >= n) {
      throw Error(ErrorCode::kInvalidInput,
                  "correspondence index " + std::to_string(i) +
                      " outside cloud of size " + std::to_string(n));
    }
  }
  BBoxSystem<Scalar> sys;
  sys.normalized << (box.x_left - k.cx) / k.fx, (box.x_right - k.cx) / k.fx,
      (box.y_top - k.cy) / k.fy, (box.y_bottom - k.cy) / k.fy;

  // Each side constrains the camera center to a plane through the touching
  // point: (n r3 - r1) . (X - T) = 0 for vertical sides, r2 for horizontal.
  sys.a.row(0) = sys.normalized[0] * r.row(2) - r.row(0);
  sys.a.row(1) = sys.normalized[1] * r.row(2) - r.row(0);
  sys.a.row(2) = sys.normalized[2] * r.row(2) - r.row(1);
  sys.a.row(3) = sys.normalized[3] * r.row(2) - r.row(1);

  const Eigen::Index idx[4] = {corr.left, corr.right, corr.top, corr.bottom};
  for (int j = 0; j < 4; ++j) {
    sys.x_box[j] = sys.a.row(j).dot(cloud.col(idx[j]));
  }
  return sys;
}

/// Squared norms of the four side vectors. For an orthonormal R these equal
/// normalized[j]^2 + 1.
template <typename Scalar>
Vector4<Scalar> SideVectorSquaredNorms(const BBoxSystem<Scalar>& sys) {
  return sys.a.rowwise().squaredNorm();
}

template <typename Scalar>
struct BoxSolution {
  CameraCenter<Scalar> camera;
  Scalar residual;
  /// Condition number of A^T A.
  Scalar condition;
};

constexpr double kMaxNormalCondition = 1e12;

/// Least-squares camera center: argmin |A T - x_box|, via SVD of A.
template <typename Scalar>
BoxSolution<Scalar> SolveBoxSystem(const BBoxSystem<Scalar>& sys) {
  if (!sys.a.allFinite() || !sys.x_box.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "system has non-finite entries");
  }
  // Coincident opposing sides leave one direction constrained only once,
  // which no longer pins the depth.
  if (sys.normalized[0] == sys.normalized[1] ||
      sys.normalized[2] == sys.normalized[3]) {
    throw Error(ErrorCode::kDegenerateGeometry,
                "bounding box has zero width or height");
  }
  const Eigen::JacobiSVD<Eigen::Matrix<Scalar, 4, 3>> svd(
      sys.a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector3<Scalar>& s = svd.singularValues();
  const Scalar ratio = s[2] > Scalar(0) ? s[0] / s[2] : Scalar(INFINITY);
  const Scalar condition = ratio * ratio;
  if (!(condition < Scalar(kMaxNormalCondition))) {
    throw Error(ErrorCode::kDegenerateGeometry,
                "bounding box matrix is rank deficient (cond(A^T A) = " +
                    std::to_string(static_cast<double>(condition)) + ")");
  }
  BoxSolution<Scalar> out;
  out.camera.position = svd.solve(sys.x_box);
  out.residual = (sys.a * out.camera.position - sys.x_box).norm();
  out.condition = condition;
  return out;
}

template <typename Scalar>
struct RecoverOptions {
  CorrespondenceMethod method = CorrespondenceMethod::kIndirect;
  Scalar z_guess = Scalar(100);
  /// Extra passes that re-select correspondences by projecting from the
  /// solved camera center and re-solve, until the selection is stable.
  int refine_passes = 10;
};

template <typename Scalar>
struct Recovery {
  Translation<Scalar> translation;
  CameraCenter<Scalar> camera;
  Correspondences correspondences;
  BBoxSystem<Scalar> system;
  Scalar residual;
  Scalar condition;
  /// Refinement passes that changed the correspondences.
  int passes_used = 0;
};

/// Translation of the object origin in the camera frame from its rotation
/// and tight 2D box.
template <typename Scalar>
Recovery<Scalar> RecoverTranslation(const CameraIntrinsics<Scalar>& k,
                                    const RotationMatrix<Scalar>& r,
                                    const BBox2D<Scalar>& box,
                                    const PointCloud<Scalar>& cloud,
                                    const RecoverOptions<Scalar>& options = {}) {
  k.Validate();
  box.Validate();
  ValidateCloud(cloud);

  Recovery<Scalar> out;
  out.correspondences =
      options.method == CorrespondenceMethod::kIndirect
          ? IndirectCorrespondences(k, r, box, cloud, options.z_guess)
          : DirectCorrespondences(r, cloud);

  auto solve = [&] {
    out.system = BuildBoxSystem(k, r, box, cloud, out.correspondences);
    const BoxSolution<Scalar> sol = SolveBoxSystem(out.system);
    out.camera = sol.camera;
    out.residual = sol.residual;
    out.condition = sol.condition;
  };
  solve();

  for (int pass = 0; pass < options.refine_passes; ++pass) {
    Correspondences next;
    try {
      next = internal::FromExtremes(ProjectCloud(k, r, out.camera, cloud));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBehindCamera) throw;
      break;
    }
    if (next == out.correspondences) break;
    out.correspondences = next;
    ++out.passes_used;
    solve();
  }

  out.translation = ToTranslation(r, out.camera);
  return out;
}

}  // namespace bbox6d

#endif  // BBOX6D_BBOX_EQUATION_HPP_

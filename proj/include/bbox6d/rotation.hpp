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

#ifndef BBOX6D_ROTATION_HPP_
#define BBOX6D_ROTATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "bbox6d/error.hpp"

namespace bbox6d {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;

/// Row-major semantics: element (i, j) is r_{i+1, j+1}. A valid rotation has
/// R^T R = I and det(R) = +1.
template <typename Scalar>
using RotationMatrix = Eigen::Matrix<Scalar, 3, 3>;

template <typename Scalar>
constexpr Scalar kRadToDeg = Scalar(180) / std::numbers::pi_v<Scalar>;
template <typename Scalar>
constexpr Scalar kDegToRad = std::numbers::pi_v<Scalar> / Scalar(180);

template <typename Scalar>
class UnitQuaternion;

template <typename Derived>
UnitQuaternion<typename Derived::Scalar> Canonicalize(
    const Eigen::MatrixBase<Derived>& raw);

/// Unit quaternion in scalar-first (w, x, y, z) order, Hamilton convention.
///
/// Instances are always unit-norm and hemisphere-canonical: w > 0, or w == 0
/// and the first nonzero of (x, y, z) is positive. The only way to obtain one
/// is through Canonicalize() or the conversion functions below, so q and -q
/// always map to the same object.
template <typename Scalar>
class UnitQuaternion {
 public:
  using Coeffs = Vector4<Scalar>;

  UnitQuaternion() : coeffs_(Scalar(1), Scalar(0), Scalar(0), Scalar(0)) {}

  Scalar w() const { return coeffs_[0]; }
  Scalar x() const { return coeffs_[1]; }
  Scalar y() const { return coeffs_[2]; }
  Scalar z() const { return coeffs_[3]; }

  /// (w, x, y, z).
  const Coeffs& coeffs() const { return coeffs_; }

  Eigen::Quaternion<Scalar> ToEigen() const {
    return Eigen::Quaternion<Scalar>(w(), x(), y(), z());
  }

  template <typename NewScalar>
  UnitQuaternion<NewScalar> cast() const {
    return Canonicalize(coeffs_.template cast<NewScalar>());
  }

  bool operator==(const UnitQuaternion& other) const {
    return coeffs_ == other.coeffs_;
  }

 private:
  explicit UnitQuaternion(const Coeffs& c) : coeffs_(c) {}

  template <typename Derived>
  friend UnitQuaternion<typename Derived::Scalar> Canonicalize(
      const Eigen::MatrixBase<Derived>& raw);

  Coeffs coeffs_;
};

using UnitQuaterniond = UnitQuaternion<double>;

/// Intrinsic Z-Y-X angles in degrees: R = Rz(yaw) * Ry(pitch) * Rx(roll).
/// roll, yaw in (-180, 180]; pitch in [-90, 90].
template <typename Scalar>
struct EulerAngles {
  Scalar roll = Scalar(0);
  Scalar pitch = Scalar(0);
  Scalar yaw = Scalar(0);
};

using EulerAnglesd = EulerAngles<double>;

/// Normalizes a raw 4-vector (w, x, y, z) and maps it onto the canonical
/// hemisphere. Throws kDegenerateInput for a zero (or non-finite) vector.
template <typename Derived>
UnitQuaternion<typename Derived::Scalar> Canonicalize(
    const Eigen::MatrixBase<Derived>& raw) {
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 4);
  using Scalar = typename Derived::Scalar;
  const Scalar norm = raw.norm();
  if (!(norm > Scalar(0)) || !std::isfinite(norm)) {
    throw Error(ErrorCode::kDegenerateInput,
                "cannot canonicalize a zero or non-finite quaternion");
  }
  Vector4<Scalar> q = raw / norm;
  bool flip = q[0] < Scalar(0);
  if (q[0] == Scalar(0)) {
    for (int i = 1; i < 4; ++i) {
      if (q[i] != Scalar(0)) {
        flip = q[i] < Scalar(0);
        break;
      }
    }
  }
  if (flip) q = -q;
  // -0.0 would compare equal but print oddly.
  for (int i = 0; i < 4; ++i) {
    if (q[i] == Scalar(0)) q[i] = Scalar(0);
  }
  return UnitQuaternion<Scalar>(q);
}

/// Rotation matrix of a (not necessarily canonical) unit 4-vector. Quadratic
/// in the coefficients, so q and -q give bit-identical matrices.
template <typename Derived>
RotationMatrix<typename Derived::Scalar> QuatToMatrix(
    const Eigen::MatrixBase<Derived>& wxyz) {
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 4);
  using Scalar = typename Derived::Scalar;
  const Scalar w = wxyz[0], x = wxyz[1], y = wxyz[2], z = wxyz[3];
  RotationMatrix<Scalar> r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return r;
}

template <typename Scalar>
RotationMatrix<Scalar> QuatToMatrix(const UnitQuaternion<Scalar>& q) {
  return QuatToMatrix(q.coeffs());
}

/// Largest deviation of R from being a proper rotation.
template <typename Derived>
typename Derived::Scalar RotationDefect(const Eigen::MatrixBase<Derived>& r) {
  using Scalar = typename Derived::Scalar;
  const RotationMatrix<Scalar> m = r;
  const Scalar ortho =
      (m.transpose() * m - RotationMatrix<Scalar>::Identity()).cwiseAbs().maxCoeff();
  return std::max(ortho, std::abs(m.determinant() - Scalar(1)));
}

/// Throws kInvalidRotation when R is farther than `tol` from SO(3).
template <typename Derived>
void CheckRotation(const Eigen::MatrixBase<Derived>& r,
                   typename Derived::Scalar tol = 1e-6) {
  const auto defect = RotationDefect(r);
  if (!(defect <= tol)) {
    throw Error(ErrorCode::kInvalidRotation,
                "matrix is not a proper rotation (defect " +
                    std::to_string(static_cast<double>(defect)) + ")");
  }
}

template <typename Derived>
UnitQuaternion<typename Derived::Scalar> MatrixToQuat(
    const Eigen::MatrixBase<Derived>& r) {
  using Scalar = typename Derived::Scalar;
  CheckRotation(r);
  const Eigen::Quaternion<Scalar> q{RotationMatrix<Scalar>(r)};
  return Canonicalize(Vector4<Scalar>(q.w(), q.x(), q.y(), q.z()));
}

namespace internal {

template <typename Scalar>
Scalar WrapDegrees(Scalar deg) {
  // Maps to (-180, 180].
  deg = std::remainder(deg, Scalar(360));
  if (deg <= Scalar(-180)) deg += Scalar(360);
  return deg;
}

}  // namespace internal

/// Inverse of EulerToQuat. At gimbal lock (cos(pitch) below 1e-9) roll is
/// pinned to zero and the combined in-plane angle is reported as yaw.
template <typename Scalar>
EulerAngles<Scalar> QuatToEuler(const UnitQuaternion<Scalar>& q) {
  const RotationMatrix<Scalar> r = QuatToMatrix(q);
  const Scalar cos_pitch = std::hypot(r(0, 0), r(1, 0));
  EulerAngles<Scalar> e;
  e.pitch = std::atan2(-r(2, 0), cos_pitch) * kRadToDeg<Scalar>;
  if (cos_pitch < Scalar(1e-9)) {
    e.roll = Scalar(0);
    e.yaw = std::atan2(-r(0, 1), r(1, 1)) * kRadToDeg<Scalar>;
  } else {
    e.roll = std::atan2(r(2, 1), r(2, 2)) * kRadToDeg<Scalar>;
    e.yaw = std::atan2(r(1, 0), r(0, 0)) * kRadToDeg<Scalar>;
  }
  e.roll = internal::WrapDegrees(e.roll);
  e.yaw = internal::WrapDegrees(e.yaw);
  return e;
}

template <typename Scalar>
UnitQuaternion<Scalar> EulerToQuat(const EulerAngles<Scalar>& e) {
  using Eigen::AngleAxis;
  const Eigen::Quaternion<Scalar> q =
      AngleAxis<Scalar>(e.yaw * kDegToRad<Scalar>, Vector3<Scalar>::UnitZ()) *
      AngleAxis<Scalar>(e.pitch * kDegToRad<Scalar>, Vector3<Scalar>::UnitY()) *
      AngleAxis<Scalar>(e.roll * kDegToRad<Scalar>, Vector3<Scalar>::UnitX());
  return Canonicalize(Vector4<Scalar>(q.w(), q.x(), q.y(), q.z()));
}

/// Uniformly distributed rotation (Shoemake's subgroup algorithm).
template <typename Scalar = double, typename Urbg>
UnitQuaternion<Scalar> RandomRotation(Urbg& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u1 = unit(gen), u2 = unit(gen), u3 = unit(gen);
  const double two_pi = 2.0 * std::numbers::pi;
  const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  const Vector4<double> q(a * std::sin(two_pi * u2), a * std::cos(two_pi * u2),
                          b * std::sin(two_pi * u3), b * std::cos(two_pi * u3));
  return Canonicalize(q.cast<Scalar>());
}

template <typename Scalar = double>
UnitQuaternion<Scalar> RandomRotation(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return RandomRotation<Scalar>(gen);
}

/// Rotation angle of q in degrees, in [0, 180].
template <typename Scalar>
Scalar RotationAngle(const UnitQuaternion<Scalar>& q) {
  return Scalar(2) * std::atan2(q.coeffs().template tail<3>().norm(),
                                std::abs(q.w())) *
         kRadToDeg<Scalar>;
}

}  // namespace bbox6d

#endif  // BBOX6D_ROTATION_HPP_

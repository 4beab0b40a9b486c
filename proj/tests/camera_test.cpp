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

#include "bbox6d/camera.hpp"

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace bbox6d;

namespace {

const CameraIntrinsicsd kK{500, 500, 320, 240};

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidInput;
}

}  // namespace

TEST(Project, Examples) {
  const Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
  const CameraCenter<double> cam{{0, 0, -5}};
  PixelPoint<double> p = Project(kK, r, cam, Eigen::Vector3d(0, 0, 0));
  EXPECT_DOUBLE_EQ(p.u, 320);
  EXPECT_DOUBLE_EQ(p.v, 240);
  EXPECT_DOUBLE_EQ(p.depth, 5);
  p = Project(kK, r, cam, Eigen::Vector3d(1, 0, 0));
  EXPECT_DOUBLE_EQ(p.u, 420);
  EXPECT_DOUBLE_EQ(p.v, 240);
  EXPECT_DOUBLE_EQ(p.depth, 5);
  EXPECT_EQ(CodeOf([&] { Project(kK, r, cam, Eigen::Vector3d(0, 0, -6)); }),
            ErrorCode::kBehindCamera);
  EXPECT_EQ(CodeOf([&] { Project(kK, r, cam, Eigen::Vector3d(0, 0, -5)); }),
            ErrorCode::kBehindCamera);
}

TEST(Project, SatisfiesPinholeEquation) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 500; ++i) {
    const Eigen::Matrix3d r = QuatToMatrix(RandomRotation(gen));
    const Eigen::Vector3d x(u(gen), u(gen), u(gen));
    // Camera five units away along the optical axis direction.
    const Eigen::Vector3d t = x - r.transpose() * Eigen::Vector3d(u(gen), u(gen), 5.0);
    const PixelPoint<double> p = Project(kK, r, CameraCenter<double>{t}, x);
    const Eigen::Vector3d lhs = p.depth * Eigen::Vector3d(p.u, p.v, 1.0);
    const Eigen::Vector3d rhs = kK.Matrix() * r * (x - t);
    EXPECT_LT((lhs - rhs).norm(), 1e-9 * rhs.norm());
    const oracle::Pixel o = oracle::ProjectPoint(500, 500, 320, 240, r, t, x);
    EXPECT_NEAR(p.u, o.u, 1e-9);
    EXPECT_NEAR(p.v, o.v, 1e-9);
  }
}

TEST(Project, ScaleConsistent) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(-1, 1), s(0.1, 10);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Matrix3d r = QuatToMatrix(RandomRotation(gen));
    const Eigen::Vector3d x(u(gen), u(gen), u(gen));
    const Eigen::Vector3d t = -r.transpose() * Eigen::Vector3d(u(gen), u(gen), 6.0);
    const double scale = s(gen);
    const PixelPoint<double> a = Project(kK, r, CameraCenter<double>{t}, x);
    const PixelPoint<double> b =
        Project(kK, r, CameraCenter<double>{scale * t}, Eigen::Vector3d(scale * x));
    EXPECT_NEAR(a.u, b.u, 1e-9);
    EXPECT_NEAR(a.v, b.v, 1e-9);
    EXPECT_NEAR(b.depth, scale * a.depth, 1e-9 * scale);
  }
}

TEST(ProjectCloud, MatchesPointwise) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-1, 1);
  PointCloudd cloud(3, 50);
  for (Eigen::Index i = 0; i < cloud.size(); ++i) cloud(i) = u(gen);
  const Eigen::Matrix3d r = QuatToMatrix(RandomRotation(gen));
  const CameraCenter<double> cam{-r.transpose() * Eigen::Vector3d(0.1, 0.2, 8)};
  const auto uv = ProjectCloud(kK, r, cam, cloud);
  for (Eigen::Index i = 0; i < cloud.cols(); ++i) {
    const PixelPoint<double> p = Project(kK, r, cam, Eigen::Vector3d(cloud.col(i)));
    EXPECT_DOUBLE_EQ(uv(0, i), p.u);
    EXPECT_DOUBLE_EQ(uv(1, i), p.v);
    EXPECT_DOUBLE_EQ(uv(2, i), p.depth);
  }
}

TEST(ProvisionalCameraCenter, Examples) {
  const Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
  EXPECT_TRUE(ProvisionalCameraCenter(kK, r, Vector2<double>(320, 240), 100.0)
                  .position.isApprox(Eigen::Vector3d(0, 0, -100)));
  EXPECT_TRUE(ProvisionalCameraCenter(kK, r, Vector2<double>(820, 240), 100.0)
                  .position.isApprox(Eigen::Vector3d(-100, 0, -100)));
  EXPECT_EQ(CodeOf([&] { ProvisionalCameraCenter(kK, r, Vector2<double>(1, 1), 0.0); }),
            ErrorCode::kInvalidInput);
}

TEST(ProvisionalCameraCenter, ClosureProperty) {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> fx(200, 1500), px(0, 640), py(0, 480),
      logz(1, 4);
  for (int i = 0; i < 1000; ++i) {
    const CameraIntrinsicsd k{fx(gen), fx(gen), px(gen), py(gen)};
    const Eigen::Matrix3d r = QuatToMatrix(RandomRotation(gen));
    const Vector2<double> center(px(gen), py(gen));
    const double z = std::pow(10.0, logz(gen));
    const CameraCenter<double> t0 = ProvisionalCameraCenter(k, r, center, z);
    const PixelPoint<double> p = Project(k, r, t0, Eigen::Vector3d::Zero().eval());
    EXPECT_NEAR(p.u, center.x(), 1e-6);
    EXPECT_NEAR(p.v, center.y(), 1e-6);
    EXPECT_NEAR(p.depth, z, 1e-9 * z);
  }
}

TEST(CameraFrames, TranslationAndCenterAreInverse) {
  std::mt19937_64 gen(6);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Matrix3d r = QuatToMatrix(RandomRotation(gen));
    const Translation<double> t{Eigen::Vector3d(0.1 * i, -0.2, 1.5)};
    const CameraCenter<double> c = ToCameraCenter(r, t);
    EXPECT_TRUE(ToTranslation(r, c).value.isApprox(t.value, 1e-12));
    // The object origin lands at t in camera coordinates.
    EXPECT_TRUE((r * (Eigen::Vector3d::Zero() - c.position)).isApprox(t.value, 1e-12));
  }
}

TEST(Intrinsics, Validation) {
  EXPECT_NO_THROW(kK.Validate());
  EXPECT_THROW((CameraIntrinsicsd{0, 500, 320, 240}.Validate()), Error);
  EXPECT_THROW((CameraIntrinsicsd{500, -1, 320, 240}.Validate()), Error);
  Eigen::Matrix3d k;
  k << 500, 0, 320, 0, 500, 240, 0, 0, 1;
  EXPECT_TRUE(kK.Matrix() == k);
}

TEST(PointCloud, Validation) {
  EXPECT_THROW(ValidateCloud(PointCloudd(3, 0)), Error);
  PointCloudd c = PointCloudd::Zero(3, 2);
  c(1, 1) = std::nan("");
  EXPECT_THROW(ValidateCloud(c), Error);
  PointCloudd box(3, 2);
  box << -1, 1, -1, 1, -1, 1;
  EXPECT_TRUE(OriginInsideBounds(box));
  box(0, 0) = 0.5;
  EXPECT_FALSE(OriginInsideBounds(box));
}

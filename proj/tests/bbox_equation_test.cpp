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

#include "bbox6d/bbox_equation.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace bbox6d;

namespace {

const CameraIntrinsicsd kK{500, 500, 320, 240};

// Corners of [-h, h]^3, x varying fastest.
PointCloudd Cube(double h) {
  PointCloudd c(3, 8);
  for (int i = 0; i < 8; ++i) {
    c.col(i) << ((i & 1) ? h : -h), ((i & 2) ? h : -h), ((i & 4) ? h : -h);
  }
  return c;
}

PointCloudd Sphere(double radius, int n, std::mt19937_64& gen) {
  PointCloudd c(3, n);
  for (int i = 0; i < n; ++i) {
    c.col(i) = radius * oracle::RandomUnit4(gen).head<3>().normalized();
  }
  return c;
}

struct Scene {
  Eigen::Matrix3d r;
  Eigen::Vector3d camera;  // object frame
  PointCloudd cloud;
  BBox2Dd box;
  oracle::Extremes truth;
};

// Exact tight box of `cloud` seen from the true camera, via the oracle.
Scene MakeScene(const Eigen::Matrix3d& r, const Eigen::Vector3d& translation,
                PointCloudd cloud, const CameraIntrinsicsd& k = kK) {
  Scene s{r, -r.transpose() * translation, std::move(cloud), {}, {}};
  s.truth = oracle::ExhaustiveExtremes(k.fx, k.fy, k.cx, k.cy, s.r, s.camera, s.cloud);
  s.box = {s.truth.u_min, s.truth.v_min, s.truth.u_max, s.truth.v_max};
  return s;
}

Correspondences TrueCorrespondences(const Scene& s) {
  return {s.truth.left, s.truth.right, s.truth.top, s.truth.bottom};
}

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

TEST(IndirectCorrespondences, AxisAlignedCube) {
  // u = 320 + 500 x / (100 + z): the near face (z = -0.5) holds the extremes,
  // and y does not affect u, so the lowest index among the tie wins.
  const BBox2Dd box{300, 220, 340, 260};
  const Correspondences c = IndirectCorrespondences(
      kK, Eigen::Matrix3d::Identity().eval(), box, Cube(0.5), 100.0);
  EXPECT_EQ(c, (Correspondences{0, 1, 0, 2}));
  const PointCloudd cube = Cube(0.5);
  EXPECT_EQ(cube(0, c.left), -0.5);
  EXPECT_EQ(cube(0, c.right), 0.5);
  EXPECT_EQ(cube(1, c.top), -0.5);
  EXPECT_EQ(cube(1, c.bottom), 0.5);
}

TEST(IndirectCorrespondences, SinglePoint) {
  const PointCloudd one = PointCloudd::Zero(3, 1);
  EXPECT_EQ(IndirectCorrespondences(kK, Eigen::Matrix3d::Identity().eval(),
                                    BBox2Dd{300, 220, 340, 260}, one),
            (Correspondences{0, 0, 0, 0}));
}

TEST(IndirectCorrespondences, FarSphereNearExtremes) {
  // Index equality with the true-camera projection does not hold for dense
  // clouds (perspective at the true depth differs from that at z_guess), but
  // the chosen points must sit within 1% of the box width of their side.
  for (double ratio : {20.0, 50.0}) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      std::mt19937_64 gen(seed);
      const PointCloudd cloud = Sphere(1.0, 200, gen);
      const Eigen::Matrix3d r = QuatToMatrix(RandomRotation(gen));
      const Scene s = MakeScene(r, {0.0, 0.0, ratio}, cloud);
      const Correspondences c = IndirectCorrespondences(kK, r, s.box, s.cloud, 100.0);
      auto u = [&](Eigen::Index i) {
        return oracle::ProjectPoint(500, 500, 320, 240, r, s.camera, s.cloud.col(i));
      };
      const double w = s.box.x_right - s.box.x_left;
      const double h = s.box.y_bottom - s.box.y_top;
      EXPECT_LT(u(c.left).u - s.box.x_left, 0.01 * w);
      EXPECT_LT(s.box.x_right - u(c.right).u, 0.01 * w);
      EXPECT_LT(u(c.top).v - s.box.y_top, 0.01 * h);
      EXPECT_LT(s.box.y_bottom - u(c.bottom).v, 0.01 * h);
    }
  }
}

TEST(IndirectCorrespondences, CloudBehindProvisionalCamera) {
  EXPECT_EQ(CodeOf([] {
              IndirectCorrespondences(kK, Eigen::Matrix3d::Identity().eval(),
                                      BBox2Dd{300, 220, 340, 260}, Cube(5.0), 1.0);
            }),
            ErrorCode::kDegenerateGeometry);
}

TEST(DirectCorrespondences, Examples) {
  const Eigen::Matrix3d eye = Eigen::Matrix3d::Identity();
  EXPECT_EQ(DirectCorrespondences(eye, Cube(0.5)), (Correspondences{0, 1, 0, 2}));
  EXPECT_EQ(DirectCorrespondences(eye, Cube(0.5)),
            IndirectCorrespondences(kK, eye, BBox2Dd{300, 220, 340, 260}, Cube(0.5),
                                    1e6));
  const Eigen::Matrix3d rz180 = QuatToMatrix(Eigen::Vector4d(0, 0, 0, 1));
  EXPECT_EQ(DirectCorrespondences(rz180, Cube(0.5)), (Correspondences{1, 0, 2, 0}));
}

TEST(DirectCorrespondences, EquivalentToIndirectInFarLimit) {
  // Box centered on the principal point; the provisional camera sits 1e6
  // radii away along the optical axis.
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> half(5, 60);
  for (int i = 0; i < 1000; ++i) {
    const PointCloudd cloud =
        (i % 2 == 0) ? Sphere(0.1, 200, gen) : PointCloudd(0.07 * Cube(1.0));
    const Eigen::Matrix3d r = QuatToMatrix(RandomRotation(gen));
    const double radius = cloud.colwise().norm().maxCoeff();
    const double hw = half(gen), hh = half(gen);
    const BBox2Dd box{kK.cx - hw, kK.cy - hh, kK.cx + hw, kK.cy + hh};
    EXPECT_EQ(DirectCorrespondences(r, cloud),
              IndirectCorrespondences(kK, r, box, cloud, 1e6 * radius))
        << i;
  }
}

TEST(BuildBoxSystem, NormalizedSides) {
  const BBoxSystem<double> sys =
      BuildBoxSystem(kK, Eigen::Matrix3d::Identity().eval(), BBox2Dd{295, 215, 345, 265},
                     Cube(0.5), Correspondences{0, 1, 0, 2});
  EXPECT_DOUBLE_EQ(sys.normalized[0], -0.05);
  EXPECT_DOUBLE_EQ(sys.normalized[1], 0.05);
  EXPECT_DOUBLE_EQ(sys.normalized[2], -0.05);
  EXPECT_DOUBLE_EQ(sys.normalized[3], 0.05);
}

TEST(BuildBoxSystem, UsesFxForColumnsAndFyForRows) {
  const CameraIntrinsicsd k{400, 800, 320, 240};
  const BBoxSystem<double> sys =
      BuildBoxSystem(k, Eigen::Matrix3d::Identity().eval(), BBox2Dd{120, 40, 720, 1040},
                     Cube(0.5), Correspondences{});
  EXPECT_DOUBLE_EQ(sys.normalized[0], -0.5);
  EXPECT_DOUBLE_EQ(sys.normalized[1], 1.0);
  EXPECT_DOUBLE_EQ(sys.normalized[2], -0.25);
  EXPECT_DOUBLE_EQ(sys.normalized[3], 1.0);
}

TEST(BuildBoxSystem, RowSignPattern) {
  // u = 0 and R = I: b_left = u r3 - r1 = (-1, 0, 0).
  const BBoxSystem<double> sys =
      BuildBoxSystem(kK, Eigen::Matrix3d::Identity().eval(), BBox2Dd{320, 240, 345, 265},
                     Cube(0.5), Correspondences{});
  EXPECT_TRUE(sys.a.row(0).isApprox(Eigen::RowVector3d(-1, 0, 0)));
  EXPECT_TRUE(sys.a.row(2).isApprox(Eigen::RowVector3d(0, -1, 0)));
  // x_box[j] = b_j . X_{i_j}
  EXPECT_DOUBLE_EQ(sys.x_box[0], 0.5);
}

TEST(BuildBoxSystem, RejectsBadIndex) {
  EXPECT_EQ(CodeOf([] {
              BuildBoxSystem(kK, Eigen::Matrix3d::Identity().eval(),
                             BBox2Dd{1, 1, 2, 2}, Cube(0.5), Correspondences{0, 8, 0, 0});
            }),
            ErrorCode::kInvalidInput);
}

TEST(SideVectorNorms, IdentityHoldsForRandomSystems) {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> px(-500, 1200);
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Matrix3d r = QuatToMatrix(RandomRotation(gen));
    const BBox2Dd box{px(gen), px(gen), px(gen), px(gen)};
    const BBoxSystem<double> sys = BuildBoxSystem(kK, r, box, Cube(0.5), Correspondences{});
    const Eigen::Vector4d norms = SideVectorSquaredNorms(sys);
    for (int j = 0; j < 4; ++j) {
      EXPECT_NEAR(norms[j], sys.normalized[j] * sys.normalized[j] + 1.0, 1e-9);
      // Brute-force row norm.
      double sq = 0;
      for (int c = 0; c < 3; ++c) sq += sys.a(j, c) * sys.a(j, c);
      EXPECT_NEAR(norms[j], sq, 1e-12);
    }
  }
}

TEST(SideVectorNorms, Examples) {
  // u_L = 0, u_R = 1 (x_R = cx + fx).
  const BBoxSystem<double> sys =
      BuildBoxSystem(kK, Eigen::Matrix3d::Identity().eval(), BBox2Dd{320, 200, 820, 280},
                     Cube(0.5), Correspondences{});
  const Eigen::Vector4d n = SideVectorSquaredNorms(sys);
  EXPECT_DOUBLE_EQ(n[0], 1.0);
  EXPECT_DOUBLE_EQ(n[1], 2.0);
}

TEST(SolveBoxSystem, CubeOnOpticalAxis) {
  // Cube [-1, 1]^3, camera center (0, 0, -10): the near face is at depth 9.
  const Scene s = MakeScene(Eigen::Matrix3d::Identity(), {0, 0, 10}, Cube(1.0));
  EXPECT_DOUBLE_EQ(s.box.x_left, 320 - 500.0 / 9);
  const BBoxSystem<double> sys =
      BuildBoxSystem(kK, s.r, s.box, s.cloud, TrueCorrespondences(s));
  const BoxSolution<double> sol = SolveBoxSystem(sys);
  EXPECT_LT((sol.camera.position - Eigen::Vector3d(0, 0, -10)).norm(), 1e-6);
  EXPECT_LT(sol.residual, 1e-9);
}

TEST(SolveBoxSystem, ExactOnConsistentScenes) {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> lat(-0.3, 0.3), depth(0.5, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const PointCloudd cloud = (i % 2) ? Sphere(0.1, 200, gen) : PointCloudd(0.06 * Cube(1.0));
    const Eigen::Matrix3d r = QuatToMatrix(RandomRotation(gen));
    const Scene s = MakeScene(r, {lat(gen), lat(gen), depth(gen)}, cloud);
    const BoxSolution<double> sol =
        SolveBoxSystem(BuildBoxSystem(kK, r, s.box, s.cloud, TrueCorrespondences(s)));
    EXPECT_LT(sol.residual, 1e-9);
    EXPECT_LT((sol.camera.position - s.camera).norm(), 1e-6 * s.camera.norm());
  }
}

TEST(SolveBoxSystem, ZeroWidthBoxIsDegenerate) {
  const BBoxSystem<double> sys =
      BuildBoxSystem(kK, Eigen::Matrix3d::Identity().eval(), BBox2Dd{300, 220, 300, 260},
                     Cube(0.5), Correspondences{0, 1, 0, 2});
  EXPECT_EQ(CodeOf([&] { SolveBoxSystem(sys); }), ErrorCode::kDegenerateGeometry);
  const BBoxSystem<double> flat =
      BuildBoxSystem(kK, Eigen::Matrix3d::Identity().eval(), BBox2Dd{300, 240, 340, 240},
                     Cube(0.5), Correspondences{0, 1, 0, 2});
  EXPECT_EQ(CodeOf([&] { SolveBoxSystem(flat); }), ErrorCode::kDegenerateGeometry);
}

TEST(SolveBoxSystem, IllConditionedIsDegenerate) {
  BBoxSystem<double> sys;
  sys.a << 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 1e-7;
  sys.x_box.setOnes();
  sys.normalized << 0, 1, 0, 1;
  EXPECT_EQ(CodeOf([&] { SolveBoxSystem(sys); }), ErrorCode::kDegenerateGeometry);
}

TEST(SolveBoxSystem, GlobalScaleInvariance) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Matrix3d r = QuatToMatrix(RandomRotation(gen));
    const Scene s = MakeScene(r, {0.1, -0.05, 1.2}, PointCloudd(0.05 * Cube(1.0)));
    BBoxSystem<double> sys = BuildBoxSystem(kK, r, s.box, s.cloud, TrueCorrespondences(s));
    // Perturb to make the system inconsistent, then rescale.
    sys.x_box[0] += 1e-3;
    const double k = scale(gen);
    BBoxSystem<double> scaled = sys;
    scaled.a *= k;
    scaled.x_box *= k;
    EXPECT_LT((SolveBoxSystem(sys).camera.position - SolveBoxSystem(scaled).camera.position)
                  .norm(),
              1e-9);
  }
}

TEST(RecoverTranslation, CubeOnOpticalAxis) {
  const Scene s = MakeScene(Eigen::Matrix3d::Identity(), {0, 0, 10}, Cube(1.0));
  for (int refine : {0, 10}) {
    RecoverOptions<double> opt;
    opt.refine_passes = refine;
    const Recovery<double> rec = RecoverTranslation(kK, s.r, s.box, s.cloud, opt);
    EXPECT_LT((rec.translation.value - Eigen::Vector3d(0, 0, 10)).norm(), 1e-9);
  }
}

TEST(RecoverTranslation, LateralShiftInvariance) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> lat(-0.4, 0.4);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Matrix3d r = QuatToMatrix(RandomRotation(gen));
    const PointCloudd cloud = Sphere(0.08, 200, gen);
    for (int k = 0; k < 2; ++k) {
      const Eigen::Vector3d t(lat(gen), lat(gen), 1.5);
      const Scene s = MakeScene(r, t, cloud);
      const Recovery<double> rec = RecoverTranslation(kK, r, s.box, s.cloud);
      EXPECT_LT((rec.translation.value - t).norm(), 1e-4 * t.norm());
    }
  }
}

TEST(RecoverTranslation, ReselectionReachesTrueCorrespondences) {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> lat(-0.3, 0.3), depth(0.5, 2.0);
  for (int i = 0; i < 300; ++i) {
    const Eigen::Matrix3d r = QuatToMatrix(RandomRotation(gen));
    const Scene s = MakeScene(r, {lat(gen), lat(gen), depth(gen)}, Sphere(0.1, 200, gen));
    const Recovery<double> rec = RecoverTranslation(kK, r, s.box, s.cloud);
    EXPECT_EQ(rec.correspondences, TrueCorrespondences(s));
  }
}

TEST(RecoverTranslation, EightCornersAndDenseSurfaceAgree) {
  // A cuboid surface sampled densely (corners included) and its eight
  // corners share the same tight box, so both recover the pose.
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> unit(-1, 1), lat(-0.3, 0.3), depth(0.6, 2.0);
  const Eigen::Vector3d half(0.05, 0.03, 0.04);
  PointCloudd dense(3, 2008);
  dense.leftCols(8) = (Cube(1.0).array().colwise() * half.array()).matrix();
  for (Eigen::Index i = 8; i < dense.cols(); ++i) {
    Eigen::Vector3d p(unit(gen), unit(gen), unit(gen));
    p[i % 3] = (i % 2) ? 1.0 : -1.0;
    dense.col(i) = p.cwiseProduct(half);
  }
  const PointCloudd corners = dense.leftCols(8);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Matrix3d r = QuatToMatrix(RandomRotation(gen));
    const Eigen::Vector3d t(lat(gen), lat(gen), depth(gen));
    const Scene s = MakeScene(r, t, dense);
    for (const PointCloudd* cloud : {static_cast<const PointCloudd*>(&dense), &corners}) {
      const Recovery<double> rec = RecoverTranslation(kK, r, s.box, *cloud);
      EXPECT_LT((rec.translation.value - t).norm(), 1e-6);
    }
  }
}

TEST(RecoverTranslation, PermutationInvariance) {
  std::mt19937_64 gen(8);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Matrix3d r = QuatToMatrix(RandomRotation(gen));
    const PointCloudd cloud = Sphere(0.1, 100, gen);
    const Scene s = MakeScene(r, {0.1, 0.05, 1.0}, cloud);
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(cloud.cols()));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    PointCloudd shuffled(3, cloud.cols());
    for (Eigen::Index j = 0; j < cloud.cols(); ++j) {
      shuffled.col(j) = cloud.col(perm[static_cast<std::size_t>(j)]);
    }
    for (int refine : {0, 10}) {
      RecoverOptions<double> opt;
      opt.refine_passes = refine;
      const auto a = RecoverTranslation(kK, r, s.box, cloud, opt);
      const auto b = RecoverTranslation(kK, r, s.box, shuffled, opt);
      EXPECT_LT((a.translation.value - b.translation.value).norm(), 1e-12);
    }
  }
}

TEST(RecoverTranslation, RejectsInvalidBox) {
  EXPECT_EQ(CodeOf([] {
              RecoverTranslation(kK, Eigen::Matrix3d::Identity().eval(),
                                 BBox2Dd{340, 220, 300, 260}, Cube(0.5));
            }),
            ErrorCode::kInvalidInput);
}

TEST(RecoverTranslation, WorksInSinglePrecision) {
  const CameraIntrinsics<float> k{500, 500, 320, 240};
  PointCloud<float> cloud = Cube(1.0).cast<float>();
  const Scene s = MakeScene(Eigen::Matrix3d::Identity(), {0, 0, 10}, Cube(1.0));
  const Recovery<float> rec = RecoverTranslation(
      k, Eigen::Matrix3f::Identity().eval(),
      BBox2D<float>{float(s.box.x_left), float(s.box.y_top), float(s.box.x_right),
                    float(s.box.y_bottom)},
      cloud);
  EXPECT_NEAR(rec.translation.value.z(), 10.0f, 1e-3f);
}

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

#include "bbox6d/pipeline.hpp"

#include <vector>

namespace bbox6d {

namespace {

std::vector<Eigen::Index> SubsampleIndices(Eigen::Index n, Eigen::Index count) {
  std::vector<Eigen::Index> idx;
  if (count <= 0 || count >= n) {
    idx.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    return idx;
  }
  idx.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index i = 0; i < count; ++i) idx.push_back(i * n / count);
  return idx;
}

}  // namespace

PointCloudd Subsample(const PointCloudd& cloud, Eigen::Index count) {
  const auto idx = SubsampleIndices(cloud.cols(), count);
  PointCloudd out(3, static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = cloud.col(idx[j]);
  }
  return out;
}

EstimateRecord RunEstimate(const EstimateRequest& request) {
  request.intrinsics.Validate();
  request.bbox.Validate();
  ValidateCloud(request.cloud);

  const auto idx = SubsampleIndices(request.cloud.cols(), request.subsample);
  const PointCloudd cloud = Subsample(request.cloud, request.subsample);
  const RotationMatrix<double> r = QuatToMatrix(request.rotation);
  const Recovery<double> rec = RecoverTranslation(
      request.intrinsics, r, request.bbox, cloud, request.options);

  auto original = [&](Eigen::Index i) { return idx[static_cast<std::size_t>(i)]; };

  EstimateRecord out;
  out.label = request.label;
  out.bbox = request.bbox;
  out.rotation = request.rotation;
  out.translation = rec.translation.value;
  out.camera_center = rec.camera.position;
  out.method = request.options.method;
  out.z_guess = request.options.z_guess;
  out.residual = rec.residual;
  out.condition = rec.condition;
  out.correspondences = {original(rec.correspondences.left),
                         original(rec.correspondences.right),
                         original(rec.correspondences.top),
                         original(rec.correspondences.bottom)};
  out.side_vector_norms = SideVectorSquaredNorms(rec.system);
  out.normalized_sides = rec.system.normalized;
  out.points_used = cloud.cols();
  out.refine_passes_used = rec.passes_used;
  out.origin_inside = OriginInsideBounds(request.cloud);
  return out;
}

}  // namespace bbox6d

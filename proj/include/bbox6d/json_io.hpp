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

#ifndef BBOX6D_JSON_IO_HPP_
#define BBOX6D_JSON_IO_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "bbox6d/bbox_equation.hpp"
#include "bbox6d/camera.hpp"
#include "bbox6d/metrics.hpp"
#include "bbox6d/pipeline.hpp"
#include "bbox6d/rotation.hpp"
#include "bbox6d/synth.hpp"

namespace bbox6d {

using Json = nlohmann::json;

// Schemas:
//   intrinsics  {"fx":..., "fy":..., "cx":..., "cy":...}
//   quaternion  [q0, q1, q2, q3]  (scalar first)
//   euler       {"roll":..., "pitch":..., "yaw":...}  degrees
//   bbox        {"xl":..., "yt":..., "xr":..., "yb":...}
//   pose        {"rotation":[q0,q1,q2,q3], "translation":[x,y,z]}
// Missing or mistyped fields throw kParseError.

Json ToJson(const CameraIntrinsicsd& k);
Json ToJson(const UnitQuaterniond& q);
Json ToJson(const EulerAnglesd& e);
Json ToJson(const BBox2Dd& box);
Json ToJson(const Pose& pose);
Json ToJson(const EstimateRecord& record);
Json ToJson(const ObjectMetrics& m);
Json ToJson(const MetricReport& report);
/// Case metadata; the cloud itself is stored separately as PLY.
Json ToJson(const SyntheticCase& c);

CameraIntrinsicsd IntrinsicsFromJson(const Json& j);
UnitQuaterniond QuaternionFromJson(const Json& j);
EulerAnglesd EulerFromJson(const Json& j);
BBox2Dd BBoxFromJson(const Json& j);
Pose PoseFromJson(const Json& j);

Json ReadJsonFile(const std::string& path);
/// One JSON value per non-blank line.
std::vector<Json> ReadJsonLines(const std::string& path);

}  // namespace bbox6d

#endif  // BBOX6D_JSON_IO_HPP_

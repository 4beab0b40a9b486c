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

#include "bbox6d/json_io.hpp"

#include <fstream>

#include "bbox6d/error.hpp"

namespace bbox6d {

namespace {

double Number(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number()) {
    throw Error(ErrorCode::kParseError,
                std::string("expected numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

template <int N>
Eigen::Matrix<double, N, 1> Array(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(N)) {
    throw Error(ErrorCode::kParseError, std::string(what) + " must be an array of " +
                                            std::to_string(N) + " numbers");
  }
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) {
    const Json& e = j[static_cast<std::size_t>(i)];
    if (!e.is_number()) {
      throw Error(ErrorCode::kParseError, std::string(what) + " has a non-number");
    }
    v[i] = e.get<double>();
  }
  return v;
}

template <typename Derived>
Json ArrayJson(const Eigen::MatrixBase<Derived>& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

const char* MethodName(CorrespondenceMethod m) {
  return m == CorrespondenceMethod::kIndirect ? "indirect" : "direct";
}

}  // namespace

Json ToJson(const CameraIntrinsicsd& k) {
  return {{"fx", k.fx}, {"fy", k.fy}, {"cx", k.cx}, {"cy", k.cy}};
}

Json ToJson(const UnitQuaterniond& q) { return ArrayJson(q.coeffs()); }

Json ToJson(const EulerAnglesd& e) {
  return {{"roll", e.roll}, {"pitch", e.pitch}, {"yaw", e.yaw}};
}

Json ToJson(const BBox2Dd& box) {
  return {{"xl", box.x_left}, {"yt", box.y_top}, {"xr", box.x_right},
          {"yb", box.y_bottom}};
}

Json ToJson(const Pose& pose) {
  return {{"rotation", ToJson(pose.rotation)},
          {"translation", ArrayJson(pose.translation)}};
}

Json ToJson(const EstimateRecord& r) {
  Json j;
  j["label"] = r.label;
  j["bbox"] = ToJson(r.bbox);
  j["rotation"] = ToJson(r.rotation);
  j["translation"] = ArrayJson(r.translation);
  j["camera_center"] = ArrayJson(r.camera_center);
  j["method"] = MethodName(r.method);
  j["z_guess"] = r.z_guess;
  j["diagnostics"] = {
      {"residual", r.residual},
      {"condition", r.condition},
      {"correspondences",
       {{"left", r.correspondences.left},
        {"right", r.correspondences.right},
        {"top", r.correspondences.top},
        {"bottom", r.correspondences.bottom}}},
      {"side_vector_norms", ArrayJson(r.side_vector_norms)},
      {"normalized_sides", ArrayJson(r.normalized_sides)},
      {"points_used", r.points_used},
      {"refine_passes_used", r.refine_passes_used},
      {"origin_inside", r.origin_inside},
  };
  return j;
}

Json ToJson(const ObjectMetrics& m) {
  return {{"count", m.count},
          {"mean_euler_error_deg", m.mean_euler_error_deg},
          {"accuracy_5cm5deg_pct", m.accuracy_5cm5deg_pct},
          {"mean_translation_error_m", m.mean_translation_error_m},
          {"mean_rotation_error_deg", m.mean_rotation_error_deg}};
}

Json ToJson(const MetricReport& report) {
  Json per = Json::object();
  for (const auto& [label, m] : report.per_label) per[label] = ToJson(m);
  return {{"per_label", per}, {"overall", ToJson(report.overall)}};
}

Json ToJson(const SyntheticCase& c) {
  return {{"seed", c.seed},
          {"intrinsics", ToJson(c.intrinsics)},
          {"bbox", ToJson(c.bbox)},
          {"pose", ToJson(Pose{c.gt_rotation, c.gt_translation})},
          {"points", c.cloud.cols()}};
}

CameraIntrinsicsd IntrinsicsFromJson(const Json& j) {
  CameraIntrinsicsd k{Number(j, "fx"), Number(j, "fy"), Number(j, "cx"),
                      Number(j, "cy")};
  k.Validate();
  return k;
}

UnitQuaterniond QuaternionFromJson(const Json& j) {
  return Canonicalize(Array<4>(j, "rotation"));
}

EulerAnglesd EulerFromJson(const Json& j) {
  return {Number(j, "roll"), Number(j, "pitch"), Number(j, "yaw")};
}

BBox2Dd BBoxFromJson(const Json& j) {
  return {Number(j, "xl"), Number(j, "yt"), Number(j, "xr"), Number(j, "yb")};
}

Pose PoseFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("rotation") || !j.contains("translation")) {
    throw Error(ErrorCode::kParseError,
                "pose needs 'rotation' and 'translation' fields");
  }
  Pose p;
  p.rotation = QuaternionFromJson(j.at("rotation"));
  p.translation = Array<3>(j.at("translation"), "translation");
  return p;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

std::vector<Json> ReadJsonLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + path);
  std::vector<Json> out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kParseError,
                  path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace bbox6d

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

#include "bbox6d/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "bbox6d/error.hpp"

namespace bbox6d {

namespace {

double WrappedAbsDiff(double a, double b) {
  double d = std::fmod(std::abs(a - b), 360.0);
  return d > 180.0 ? 360.0 - d : d;
}

double SortedMean(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

struct PairErrors {
  std::vector<double> euler, te, re, correct;
};

ObjectMetrics Summarize(const PairErrors& e) {
  ObjectMetrics m;
  m.count = e.te.size();
  m.mean_euler_error_deg = SortedMean(e.euler);
  m.mean_translation_error_m = SortedMean(e.te);
  m.mean_rotation_error_deg = SortedMean(e.re);
  m.accuracy_5cm5deg_pct = 100.0 * SortedMean(e.correct);
  return m;
}

}  // namespace

double TranslationalError(const Eigen::Vector3d& t_est,
                          const Eigen::Vector3d& t_gt) {
  return (t_gt - t_est).norm();
}

double RotationalError(const RotationMatrix<double>& r_est,
                       const RotationMatrix<double>& r_gt) {
  const double c = ((r_est * r_gt.transpose()).trace() - 1.0) / 2.0;
  return std::acos(std::clamp(c, -1.0, 1.0)) * kRadToDeg<double>;
}

double RotationalError(const UnitQuaterniond& q_est,
                       const UnitQuaterniond& q_gt) {
  const Eigen::Quaterniond d = q_est.ToEigen().conjugate() * q_gt.ToEigen();
  return 2.0 * std::atan2(d.vec().norm(), std::abs(d.w())) * kRadToDeg<double>;
}

double AvgEulerError(const UnitQuaterniond& q_est, const UnitQuaterniond& q_gt) {
  const EulerAnglesd a = QuatToEuler(q_est);
  const EulerAnglesd b = QuatToEuler(q_gt);
  return (WrappedAbsDiff(a.roll, b.roll) + WrappedAbsDiff(a.pitch, b.pitch) +
          WrappedAbsDiff(a.yaw, b.yaw)) /
         3.0;
}

bool PoseCorrect5cm5deg(const Pose& est, const Pose& gt) {
  return TranslationalError(est.translation, gt.translation) <
             kMaxTranslationErrorM &&
         RotationalError(QuatToMatrix(est.rotation), QuatToMatrix(gt.rotation)) <
             kMaxRotationErrorDeg;
}

MetricReport Aggregate(const std::vector<LabeledPosePair>& pairs) {
  if (pairs.empty()) {
    throw Error(ErrorCode::kInvalidInput, "nothing to aggregate");
  }
  std::map<std::string, PairErrors> by_label;
  PairErrors all;
  for (const auto& p : pairs) {
    const double euler = AvgEulerError(p.estimate.rotation, p.ground_truth.rotation);
    const double te =
        TranslationalError(p.estimate.translation, p.ground_truth.translation);
    const double re = RotationalError(QuatToMatrix(p.estimate.rotation),
                                      QuatToMatrix(p.ground_truth.rotation));
    const double ok = PoseCorrect5cm5deg(p.estimate, p.ground_truth) ? 1.0 : 0.0;
    for (PairErrors* e : {&by_label[p.label], &all}) {
      e->euler.push_back(euler);
      e->te.push_back(te);
      e->re.push_back(re);
      e->correct.push_back(ok);
    }
  }
  MetricReport report;
  for (const auto& [label, errors] : by_label) {
    report.per_label[label] = Summarize(errors);
  }
  report.overall = Summarize(all);
  return report;
}

std::string FormatTable(const MetricReport& report) {
  std::size_t width = std::string("average").size();
  for (const auto& [label, m] : report.per_label) {
    width = std::max(width, label.size());
  }
  std::string out;
  char line[256];
  const int w = static_cast<int>(width);
  std::snprintf(line, sizeof(line), "%-*s %6s %10s %10s %10s %10s\n", w,
                "object", "count", "euler_deg", "5cm5deg_%", "e_TE_m",
                "e_RE_deg");
  out += line;
  auto row = [&](const std::string& label, const ObjectMetrics& m) {
    std::snprintf(line, sizeof(line), "%-*s %6zu %10.2f %10.2f %10.4f %10.2f\n",
                  w, label.c_str(), m.count, m.mean_euler_error_deg,
                  m.accuracy_5cm5deg_pct, m.mean_translation_error_m,
                  m.mean_rotation_error_deg);
    out += line;
  };
  for (const auto& [label, m] : report.per_label) row(label, m);
  row("average", report.overall);
  return out;
}

}  // namespace bbox6d

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

#include "bbox6d/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Core>

#include "bbox6d/diff_head.hpp"
#include "bbox6d/error.hpp"
#include "bbox6d/rotation.hpp"

namespace bbox6d {

namespace {

// Entry-wise comparison. Returns the largest relative error; an entry fails
// only when it exceeds both the relative tolerance and the absolute floor.
template <typename A, typename B>
double Compare(const Eigen::MatrixBase<A>& analytic,
               const Eigen::MatrixBase<B>& numeric, const GradTolerance& tol,
               int& failures) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < analytic.size(); ++i) {
    const double a = analytic(i), n = numeric(i);
    const double abs_err = std::abs(a - n);
    const double scale = std::max(std::abs(a), std::abs(n));
    const double rel = scale > 0.0 ? abs_err / scale : 0.0;
    worst = std::max(worst, rel);
    if (rel > tol.relative && abs_err > tol.abs_floor) ++failures;
  }
  return worst;
}

Eigen::Vector4d CentralDifference(
    const std::function<double(const Eigen::Vector4d&)>& f,
    const Eigen::Vector4d& at, double eps) {
  Eigen::Vector4d g;
  for (int i = 0; i < 4; ++i) {
    Eigen::Vector4d hi = at, lo = at;
    hi[i] += eps;
    lo[i] -= eps;
    g[i] = (f(hi) - f(lo)) / (2.0 * eps);
  }
  return g;
}

// Unchecked forward loss for the finite-difference probes, which step off
// the unit sphere.
double ProbeLoss(const Eigen::Vector4d& raw, const Eigen::Vector4d& q_gt,
                 bool normalize) {
  return normalize ? RawDotLoss(QNormForward(raw), q_gt) : RawDotLoss(raw, q_gt);
}

}  // namespace

GradCheckReport RunGradCheck(int trials, double eps, std::uint64_t seed,
                             GradTolerance tol) {
  if (trials < 1 || !(eps > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "gradcheck needs trials >= 1, eps > 0");
  }
  GradCheckReport report;
  report.trials = trials;
  report.eps = eps;

  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> norm_range(0.5, 2.0);
  constexpr int kDim = 8;

  for (int t = 0; t < trials; ++t) {
    const Eigen::Vector4d q_gt = RandomRotation(gen).coeffs();

    Eigen::Vector4d raw;
    do {
      raw << normal(gen), normal(gen), normal(gen), normal(gen);
    } while (raw.norm() < 1e-3);
    raw *= norm_range(gen) / raw.norm();
    const Eigen::Vector4d numeric = CentralDifference(
        [&](const Eigen::Vector4d& q) { return ProbeLoss(q, q_gt, true); }, raw,
        eps);
    report.max_rel_error_qnorm =
        std::max(report.max_rel_error_qnorm,
                 Compare(QNormBackward(raw, q_gt), numeric, tol, report.failures));

    HeadParams p;
    p.weight.resize(4, kDim);
    Eigen::VectorXd x(kDim);
    do {
      for (Eigen::Index i = 0; i < p.weight.size(); ++i) p.weight(i) = 0.5 * normal(gen);
      for (int i = 0; i < 4; ++i) p.bias[i] = 0.5 * normal(gen);
      for (int i = 0; i < kDim; ++i) x[i] = normal(gen);
    } while ((p.weight * x + p.bias).norm() < 0.5);

    for (bool normalize : {true, false}) {
      const HeadGradients g = HeadBackward(p, x, q_gt, normalize);
      auto loss = [&](const HeadParams& probe) {
        return ProbeLoss(probe.weight * x + probe.bias, q_gt, normalize);
      };
      Eigen::Matrix<double, 4, Eigen::Dynamic> dw(4, kDim);
      for (Eigen::Index i = 0; i < p.weight.size(); ++i) {
        HeadParams hi = p, lo = p;
        hi.weight(i) += eps;
        lo.weight(i) -= eps;
        dw(i) = (loss(hi) - loss(lo)) / (2.0 * eps);
      }
      Eigen::Vector4d db;
      for (int i = 0; i < 4; ++i) {
        HeadParams hi = p, lo = p;
        hi.bias[i] += eps;
        lo.bias[i] -= eps;
        db[i] = (loss(hi) - loss(lo)) / (2.0 * eps);
      }
      report.max_rel_error_head = std::max(
          {report.max_rel_error_head, Compare(g.weight, dw, tol, report.failures),
           Compare(g.bias, db, tol, report.failures)});
    }
  }
  return report;
}

}  // namespace bbox6d

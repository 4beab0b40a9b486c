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

#include "bbox6d/diff_head.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bbox6d/error.hpp"
#include "bbox6d/rotation.hpp"

namespace bbox6d {

namespace {

constexpr double kMinNorm = 1e-12;
constexpr double kUnitTolerance = 1e-6;

double CheckedNorm(const Eigen::Vector4d& raw) {
  const double norm = raw.norm();
  if (!(norm > kMinNorm) || !std::isfinite(norm)) {
    throw Error(ErrorCode::kDegenerateInput,
                "raw output norm too small to normalize");
  }
  return norm;
}

void CheckUnit(const Eigen::Vector4d& q, const char* name) {
  if (!(std::abs(q.norm() - 1.0) <= kUnitTolerance)) {
    throw Error(ErrorCode::kInvalidInput,
                std::string(name) + " is not a unit vector");
  }
}

void CheckDim(const HeadParams& p, const Eigen::VectorXd& x) {
  if (x.size() != p.dim()) {
    throw Error(ErrorCode::kInvalidInput,
                "feature dimension " + std::to_string(x.size()) +
                    " does not match head dimension " + std::to_string(p.dim()));
  }
}

}  // namespace

Eigen::Vector4d QNormForward(const Eigen::Vector4d& raw) {
  return raw / CheckedNorm(raw);
}

Eigen::Matrix4d QNormJacobian(const Eigen::Vector4d& raw) {
  const double a = CheckedNorm(raw);
  const Eigen::Vector4d q = raw / a;
  // Diagonal (1 - q_i^2) / A, off-diagonal -q_i q_j / A.
  return (Eigen::Matrix4d::Identity() - q * q.transpose()) / a;
}

double DotLoss(const Eigen::Vector4d& q_hat, const Eigen::Vector4d& q_gt) {
  CheckUnit(q_hat, "prediction");
  CheckUnit(q_gt, "ground truth");
  return std::clamp(0.5 * (1.0 - q_hat.dot(q_gt)), 0.0, 1.0);
}

double RawDotLoss(const Eigen::Vector4d& output, const Eigen::Vector4d& q_gt) {
  return 0.5 * (1.0 - output.dot(q_gt));
}

Eigen::Vector4d DotLossGrad(const Eigen::Vector4d& q_hat,
                            const Eigen::Vector4d& q_gt) {
  CheckUnit(q_hat, "prediction");
  CheckUnit(q_gt, "ground truth");
  return -0.5 * q_gt;
}

Eigen::Vector4d QNormBackward(const Eigen::Vector4d& raw,
                              const Eigen::Vector4d& q_gt) {
  const Eigen::Vector4d q_hat = QNormForward(raw);
  return QNormJacobian(raw).transpose() * DotLossGrad(q_hat, q_gt);
}

Eigen::Vector4d HeadForward(const HeadParams& p, const Eigen::VectorXd& x,
                            bool normalize) {
  CheckDim(p, x);
  const Eigen::Vector4d out = p.weight * x + p.bias;
  return normalize ? QNormForward(out) : out;
}

double HeadLoss(const HeadParams& p, const Eigen::VectorXd& x,
                const Eigen::Vector4d& q_gt, bool normalize) {
  const Eigen::Vector4d out = HeadForward(p, x, normalize);
  return normalize ? DotLoss(out, q_gt) : RawDotLoss(out, q_gt);
}

HeadGradients HeadBackward(const HeadParams& p, const Eigen::VectorXd& x,
                           const Eigen::Vector4d& q_gt, bool normalize) {
  CheckDim(p, x);
  const Eigen::Vector4d raw = p.weight * x + p.bias;
  const Eigen::Vector4d d_raw =
      normalize ? QNormBackward(raw, q_gt) : Eigen::Vector4d(-0.5 * q_gt);
  HeadGradients g;
  g.weight = d_raw * x.transpose();
  g.bias = d_raw;
  return g;
}

BatchResult HeadBatch(const HeadParams& p, const Eigen::MatrixXd& features,
                      const Eigen::Matrix<double, 4, Eigen::Dynamic>& targets,
                      bool normalize) {
  const Eigen::Index n = features.cols();
  if (n == 0 || targets.cols() != n) {
    throw Error(ErrorCode::kInvalidInput, "batch is empty or mismatched");
  }
  BatchResult out;
  out.grads.weight = Eigen::Matrix<double, 4, Eigen::Dynamic>::Zero(4, p.dim());
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd x = features.col(i);
    const Eigen::Vector4d q_gt = targets.col(i);
    out.loss += HeadLoss(p, x, q_gt, normalize);
    const HeadGradients g = HeadBackward(p, x, q_gt, normalize);
    out.grads.weight += g.weight;
    out.grads.bias += g.bias;
  }
  out.loss /= static_cast<double>(n);
  out.grads.weight /= static_cast<double>(n);
  out.grads.bias /= static_cast<double>(n);
  return out;
}

void TrainConfig::Validate() const {
  if (!(base_lr > 0.0) || !(momentum >= 0.0 && momentum < 1.0) ||
      !(gamma > 0.0 && gamma <= 1.0) || step_size < 1 || batch_size < 1 ||
      iterations < 0 || !(weight_decay >= 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "invalid training configuration");
  }
}

double LearningRate(const TrainConfig& cfg, int iteration) {
  return cfg.base_lr * std::pow(cfg.gamma, iteration / cfg.step_size);
}

SgdState SgdState::ZerosLike(const HeadParams& p) {
  SgdState s;
  s.weight_velocity =
      Eigen::Matrix<double, 4, Eigen::Dynamic>::Zero(4, p.dim());
  return s;
}

void SgdStep(HeadParams& p, const HeadGradients& g, SgdState& state,
             const TrainConfig& cfg, int iteration) {
  const double lr = LearningRate(cfg, iteration);
  state.weight_velocity = cfg.momentum * state.weight_velocity -
                          lr * (g.weight + cfg.weight_decay * p.weight);
  state.bias_velocity = cfg.momentum * state.bias_velocity -
                        lr * (g.bias + cfg.weight_decay * p.bias);
  p.weight += state.weight_velocity;
  p.bias += state.bias_velocity;
}

HeadParams XavierInit(Eigen::Index dim, std::mt19937_64& gen) {
  const double limit = std::sqrt(3.0 / static_cast<double>(dim));
  std::uniform_real_distribution<double> dist(-limit, limit);
  HeadParams p;
  p.weight.resize(4, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (int i = 0; i < 4; ++i) p.weight(i, j) = dist(gen);
  }
  p.bias.setZero();
  return p;
}

ToyTask MakeToyTask(std::uint64_t seed, int samples, int dim) {
  if (samples < 1 || dim < 1) {
    throw Error(ErrorCode::kInvalidInput, "toy task needs samples, dim >= 1");
  }
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ToyTask task;
  task.features.resize(dim, samples);
  task.targets.resize(4, samples);
  for (int i = 0; i < samples; ++i) {
    Eigen::VectorXd x(dim);
    do {
      for (int j = 0; j < dim; ++j) x[j] = normal(gen);
    } while (x.norm() == 0.0);
    task.features.col(i) = x.normalized();
    task.targets.col(i) = RandomRotation(gen).coeffs();
  }
  return task;
}

TrainResult TrainToy(std::uint64_t task_seed, const TrainConfig& cfg) {
  cfg.Validate();
  const ToyTask task = MakeToyTask(task_seed);
  const Eigen::Index samples = task.features.cols();

  std::mt19937_64 gen(cfg.seed);
  TrainResult out;
  out.params = XavierInit(task.features.rows(), gen);
  SgdState state = SgdState::ZerosLike(out.params);
  std::uniform_int_distribution<Eigen::Index> pick(0, samples - 1);

  Eigen::MatrixXd batch_x(task.features.rows(), cfg.batch_size);
  Eigen::Matrix<double, 4, Eigen::Dynamic> batch_q(4, cfg.batch_size);
  out.history.reserve(static_cast<std::size_t>(cfg.iterations));

  for (int it = 0; it < cfg.iterations; ++it) {
    for (int b = 0; b < cfg.batch_size; ++b) {
      const Eigen::Index i = pick(gen);
      batch_x.col(b) = task.features.col(i);
      batch_q.col(b) = task.targets.col(i);
    }
    double sphere = 0.0;
    for (int b = 0; b < cfg.batch_size; ++b) {
      const Eigen::Vector4d pred =
          HeadForward(out.params, batch_x.col(b), cfg.normalize);
      if (cfg.normalize) {
        out.max_norm_deviation =
            std::max(out.max_norm_deviation, std::abs(pred.norm() - 1.0));
      }
      sphere += DotLoss(QNormForward(pred), batch_q.col(b));
    }
    const BatchResult batch =
        HeadBatch(out.params, batch_x, batch_q, cfg.normalize);
    out.history.push_back({it, LearningRate(cfg, it), batch.loss,
                           sphere / cfg.batch_size});
    SgdStep(out.params, batch.grads, state, cfg, it);
  }
  return out;
}

}  // namespace bbox6d

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

#ifndef BBOX6D_DIFF_HEAD_HPP_
#define BBOX6D_DIFF_HEAD_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace bbox6d {

// q-normalization layer and Dot Product Loss.

/// Q / |Q|. Throws kDegenerateInput when |Q| <= 1e-12.
Eigen::Vector4d QNormForward(const Eigen::Vector4d& raw);

/// Jacobian d q_hat_j / d Q_i of QNormForward, i.e. (I - q_hat q_hat^T) / |Q|.
/// Symmetric, so the row/column convention does not matter.
Eigen::Matrix4d QNormJacobian(const Eigen::Vector4d& raw);

/// 0.5 * (1 - q_hat . q_gt), clamped to [0, 1]. Both inputs must be unit
/// within 1e-6 (kInvalidInput otherwise).
double DotLoss(const Eigen::Vector4d& q_hat, const Eigen::Vector4d& q_gt);

/// Same formula applied to an unnormalized output, unchecked and unclamped.
/// Used as the training loss of heads without the normalization layer.
double RawDotLoss(const Eigen::Vector4d& output, const Eigen::Vector4d& q_gt);

/// dL/dq_hat = -q_gt / 2.
Eigen::Vector4d DotLossGrad(const Eigen::Vector4d& q_hat,
                            const Eigen::Vector4d& q_gt);

/// dL/dQ of DotLoss(QNormForward(Q), q_gt).
Eigen::Vector4d QNormBackward(const Eigen::Vector4d& raw,
                              const Eigen::Vector4d& q_gt);

// Linear head: Q = W x + b, optionally followed by q-normalization.

struct HeadParams {
  Eigen::Matrix<double, 4, Eigen::Dynamic> weight;
  Eigen::Vector4d bias = Eigen::Vector4d::Zero();

  Eigen::Index dim() const { return weight.cols(); }
};

struct HeadGradients {
  Eigen::Matrix<double, 4, Eigen::Dynamic> weight;
  Eigen::Vector4d bias = Eigen::Vector4d::Zero();
};

Eigen::Vector4d HeadForward(const HeadParams& p, const Eigen::VectorXd& x,
                            bool normalize);

/// Per-sample training loss: DotLoss on the normalized output, or RawDotLoss
/// on the raw output when `normalize` is false.
double HeadLoss(const HeadParams& p, const Eigen::VectorXd& x,
                const Eigen::Vector4d& q_gt, bool normalize);

HeadGradients HeadBackward(const HeadParams& p, const Eigen::VectorXd& x,
                           const Eigen::Vector4d& q_gt, bool normalize);

struct BatchResult {
  double loss = 0.0;
  HeadGradients grads;
};

/// Mean loss and mean gradient over the columns of `features` / `targets`.
BatchResult HeadBatch(const HeadParams& p, const Eigen::MatrixXd& features,
                      const Eigen::Matrix<double, 4, Eigen::Dynamic>& targets,
                      bool normalize);

// Training.

struct TrainConfig {
  double base_lr = 1e-4;
  double momentum = 0.9;
  double weight_decay = 4e-3;
  int step_size = 10000;
  double gamma = 0.8;
  int batch_size = 24;
  int iterations = 2000;
  std::uint64_t seed = 0;
  bool normalize = true;

  void Validate() const;
};

/// base_lr * gamma^floor(iteration / step_size).
double LearningRate(const TrainConfig& cfg, int iteration);

struct SgdState {
  Eigen::Matrix<double, 4, Eigen::Dynamic> weight_velocity;
  Eigen::Vector4d bias_velocity = Eigen::Vector4d::Zero();

  static SgdState ZerosLike(const HeadParams& p);
};

/// v <- momentum v - lr (g + weight_decay p); p <- p + v. Weight decay is
/// applied to both weights and biases.
void SgdStep(HeadParams& p, const HeadGradients& g, SgdState& state,
             const TrainConfig& cfg, int iteration);

/// Uniform Xavier init for W (limit sqrt(3 / fan_in)), zero bias.
HeadParams XavierInit(Eigen::Index dim, std::mt19937_64& gen);

/// Synthetic regression task: fixed unit feature vectors (columns) paired
/// with canonical random rotation targets.
struct ToyTask {
  Eigen::MatrixXd features;
  Eigen::Matrix<double, 4, Eigen::Dynamic> targets;
};

ToyTask MakeToyTask(std::uint64_t seed, int samples = 256, int dim = 32);

struct TrainPoint {
  int iteration = 0;
  double lr = 0.0;
  /// Mean training loss of the batch, before the update.
  double loss = 0.0;
  /// Mean DotLoss of the normalized predictions; equals `loss` for
  /// normalized heads.
  double sphere_loss = 0.0;
};

struct TrainResult {
  std::vector<TrainPoint> history;
  HeadParams params;
  /// max | |prediction| - 1 | over every emitted prediction (normalized
  /// heads only; 0 otherwise).
  double max_norm_deviation = 0.0;
};

/// Trains a head on MakeToyTask(task_seed). Batches are drawn uniformly with
/// replacement from cfg.seed; the same seeds give bit-identical runs.
TrainResult TrainToy(std::uint64_t task_seed, const TrainConfig& cfg);

}  // namespace bbox6d

#endif  // BBOX6D_DIFF_HEAD_HPP_

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

// bbox6d command line: translation recovery, synthetic scenes, metrics,
// gradient checks and toy head training.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bbox6d/bbox_equation.hpp"
#include "bbox6d/diff_head.hpp"
#include "bbox6d/error.hpp"
#include "bbox6d/gradcheck.hpp"
#include "bbox6d/json_io.hpp"
#include "bbox6d/metrics.hpp"
#include "bbox6d/pipeline.hpp"
#include "bbox6d/ply.hpp"
#include "bbox6d/synth.hpp"

namespace fs = std::filesystem;
using namespace bbox6d;

namespace {

std::vector<double> ParseList(const std::string& text, std::size_t n,
                              const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidInput,
                  std::string(what) + ": bad number '" + item + "'");
    }
  }
  if (out.size() != n) {
    throw Error(ErrorCode::kInvalidInput, std::string(what) + " needs " +
                                              std::to_string(n) +
                                              " comma-separated values");
  }
  return out;
}

struct EstimateArgs {
  std::string intrinsics, cloud, extents, bbox, quat, label = "object";
  std::string method = "indirect";
  double z_guess = 100.0;
  long subsample = 0;
  int refine = 10;
};

int RunEstimateCommand(const EstimateArgs& a) {
  EstimateRequest req;
  req.label = a.label;
  req.intrinsics = IntrinsicsFromJson(ReadJsonFile(a.intrinsics));
  if (!a.cloud.empty()) {
    req.cloud = LoadPly(a.cloud);
  } else {
    const auto e = ParseList(a.extents, 3, "--extents");
    req.cloud = CubeCorners({e[0], e[1], e[2]});
  }
  const auto b = ParseList(a.bbox, 4, "--bbox");
  req.bbox = {b[0], b[1], b[2], b[3]};
  const auto q = ParseList(a.quat, 4, "--quat");
  req.rotation = Canonicalize(Eigen::Vector4d(q[0], q[1], q[2], q[3]));
  req.options.method = a.method == "direct" ? CorrespondenceMethod::kDirect
                                            : CorrespondenceMethod::kIndirect;
  req.options.z_guess = a.z_guess;
  req.options.refine_passes = a.refine;
  req.subsample = a.subsample;
  std::cout << ToJson(RunEstimate(req)).dump(2) << "\n";
  return 0;
}

struct SynthArgs {
  std::uint64_t seed = 0;
  int count = 1;
  std::string cloud = "corners";
  std::string out;
  double min_offset_px = -1.0;
};

int RunSynthCommand(const SynthArgs& a) {
  SynthConfig cfg;
  cfg.cloud = ParseCloudKind(a.cloud);
  if (a.min_offset_px >= 0.0) {
    cfg.pixel_offset = std::array<double, 2>{a.min_offset_px, a.min_offset_px + 60.0};
  }
  fs::create_directories(a.out);
  {
    std::ofstream k(fs::path(a.out) / "intrinsics.json");
    k << ToJson(cfg.intrinsics).dump(2) << "\n";
  }
  std::ofstream gt(fs::path(a.out) / "gt.jsonl");
  for (int i = 0; i < a.count; ++i) {
    const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(i);
    const SyntheticCase c = SynthScene(seed, cfg);
    char stem[32];
    std::snprintf(stem, sizeof(stem), "case_%04d", i);
    SavePly((fs::path(a.out) / (std::string(stem) + ".ply")).string(), c.cloud);
    Json meta = ToJson(c);
    meta["cloud"] = std::string(stem) + ".ply";
    meta["cloud_kind"] = a.cloud;
    std::ofstream(fs::path(a.out) / (std::string(stem) + ".json"))
        << meta.dump(2) << "\n";
    Json line = ToJson(Pose{c.gt_rotation, c.gt_translation});
    line["label"] = a.cloud;
    line["case"] = stem;
    gt << line.dump() << "\n";
  }
  std::cout << "wrote " << a.count << " cases to " << a.out << "\n";
  return 0;
}

int RunEvalCommand(const std::string& pred_path, const std::string& gt_path) {
  const auto preds = ReadJsonLines(pred_path);
  const auto gts = ReadJsonLines(gt_path);
  if (preds.size() != gts.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "prediction and ground-truth files differ in length (" +
                    std::to_string(preds.size()) + " vs " +
                    std::to_string(gts.size()) + ")");
  }
  std::vector<LabeledPosePair> pairs;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    LabeledPosePair p{PoseFromJson(preds[i]), PoseFromJson(gts[i]), "object"};
    if (gts[i].contains("label") && gts[i]["label"].is_string()) {
      p.label = gts[i]["label"].get<std::string>();
    }
    pairs.push_back(p);
  }
  const MetricReport report = Aggregate(pairs);
  std::cout << ToJson(report).dump(2) << "\n";
  std::cerr << FormatTable(report);
  return 0;
}

int RunGradCheckCommand(int trials, double eps, std::uint64_t seed) {
  const GradCheckReport r = RunGradCheck(trials, eps, seed);
  Json j{{"trials", r.trials},
         {"eps", r.eps},
         {"max_rel_error_qnorm", r.max_rel_error_qnorm},
         {"max_rel_error_head", r.max_rel_error_head},
         {"failures", r.failures},
         {"pass", r.passed()}};
  std::cout << j.dump(2) << "\n";
  std::cerr << (r.passed() ? "PASS" : "FAIL") << " max relative error "
            << std::max(r.max_rel_error_qnorm, r.max_rel_error_head) << "\n";
  return r.passed() ? 0 : 1;
}

int RunTrainCommand(const TrainConfig& cfg, std::uint64_t task_seed,
                    const std::string& out_path) {
  const TrainResult res = TrainToy(task_seed, cfg);
  std::ofstream out(out_path);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + out_path);
  out << "iteration,lr,loss\n";
  char line[128];
  for (const TrainPoint& p : res.history) {
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g\n", p.iteration, p.lr, p.loss);
    out << line;
  }
  std::cout << "wrote " << res.history.size() << " iterations to " << out_path
            << "\n";
  return 0;
}

int RunProjectBoxCommand(const std::string& intrinsics, const std::string& pose,
                         const std::string& extents) {
  const CameraIntrinsicsd k = IntrinsicsFromJson(ReadJsonFile(intrinsics));
  const Pose p = PoseFromJson(ReadJsonFile(pose));
  const auto e = ParseList(extents, 3, "--extents");
  const auto corners = ProjectBoxCorners(k, p, {e[0], e[1], e[2]});
  Json arr = Json::array();
  for (const auto& c : corners) arr.push_back({c.x(), c.y()});
  std::cout << Json{{"corners", arr}}.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bbox6d: 6D object pose from a rotation and a 2D bounding box.\n"
      "Quaternions are scalar-first (w,x,y,z); Euler angles are intrinsic "
      "Z-Y-X (yaw, pitch, roll) in degrees; lengths are meters."};
  app.require_subcommand(1);

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "recover the 3D translation");
  estimate->add_option("--intrinsics", est.intrinsics, "intrinsics JSON")->required();
  auto* cloud_opt = estimate->add_option("--cloud", est.cloud, "ASCII PLY point cloud");
  auto* ext_opt = estimate->add_option("--extents", est.extents,
                                       "box half-sizes ex,ey,ez (eight corners)");
  cloud_opt->excludes(ext_opt);
  estimate->add_option("--bbox", est.bbox, "xl,yt,xr,yb in pixels")->required();
  estimate->add_option("--quat", est.quat, "rotation q0,q1,q2,q3")->required();
  estimate->add_option("--method", est.method, "correspondence search")
      ->check(CLI::IsMember({"indirect", "direct"}));
  estimate->add_option("--zguess", est.z_guess, "provisional depth")->capture_default_str();
  estimate->add_option("--subsample", est.subsample, "use N evenly spaced points");
  estimate->add_option("--refine", est.refine,
                       "max correspondence re-selection passes (0 = single pass)");
  estimate->add_option("--label", est.label, "object label for the record");

  SynthArgs syn;
  auto* synth = app.add_subcommand("synth", "write synthetic cases");
  synth->add_option("--seed", syn.seed, "first seed");
  synth->add_option("--count", syn.count, "number of cases");
  synth->add_option("--cloud", syn.cloud, "corners|sphere")
      ->check(CLI::IsMember({"corners", "sphere"}));
  synth->add_option("--out", syn.out, "output directory")->required();
  synth->add_option("--min-offset-px", syn.min_offset_px,
                    "place objects at least this many pixels off-center");

  std::string pred_path, gt_path;
  auto* eval = app.add_subcommand("eval", "pose metrics (JSON on stdout, table on stderr)");
  eval->add_option("--pred", pred_path, "predicted poses, JSON lines")->required();
  eval->add_option("--gt", gt_path, "ground-truth poses, JSON lines")->required();

  int trials = 1000;
  double eps = 1e-5;
  std::uint64_t gc_seed = 7;
  auto* gradcheck = app.add_subcommand("gradcheck", "finite-difference gradient check");
  gradcheck->add_option("--trials", trials);
  gradcheck->add_option("--eps", eps);
  gradcheck->add_option("--seed", gc_seed);

  TrainConfig tcfg;
  std::uint64_t task_seed = 0;
  std::string history_path = "history.csv";
  std::string normalize = "true";
  auto* train = app.add_subcommand("train-head", "train the toy quaternion head");
  train->add_option("--iters", tcfg.iterations);
  train->add_option("--normalize", normalize)->check(CLI::IsMember({"true", "false"}));
  train->add_option("--seed", tcfg.seed, "init and batch sampling seed");
  train->add_option("--task-seed", task_seed, "synthetic task seed");
  train->add_option("--base-lr", tcfg.base_lr);
  train->add_option("--momentum", tcfg.momentum);
  train->add_option("--weight-decay", tcfg.weight_decay);
  train->add_option("--step-size", tcfg.step_size);
  train->add_option("--gamma", tcfg.gamma);
  train->add_option("--batch", tcfg.batch_size);
  train->add_option("--out", history_path, "CSV history (iteration,lr,loss)");

  std::string pb_intrinsics, pb_pose, pb_extents;
  auto* project = app.add_subcommand("project-box", "project 3D box corners");
  project->add_option("--intrinsics", pb_intrinsics)->required();
  project->add_option("--pose", pb_pose)->required();
  project->add_option("--extents", pb_extents)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*estimate) {
      if (est.cloud.empty() && est.extents.empty()) {
        throw Error(ErrorCode::kInvalidInput, "need --cloud or --extents");
      }
      return RunEstimateCommand(est);
    }
    if (*synth) return RunSynthCommand(syn);
    if (*eval) return RunEvalCommand(pred_path, gt_path);
    if (*gradcheck) return RunGradCheckCommand(trials, eps, gc_seed);
    if (*train) {
      tcfg.normalize = normalize == "true";
      return RunTrainCommand(tcfg, task_seed, history_path);
    }
    if (*project) return RunProjectBoxCommand(pb_intrinsics, pb_pose, pb_extents);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

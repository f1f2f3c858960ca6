#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lgce/dataset.hpp"
#include "lgce/network.hpp"

namespace lgce {

struct TrainConfig {
  int qp = 37;  // label only; recorded in logs
  std::size_t batch_size = 32;
  std::size_t epochs = 40;
  double base_lr = 1e-4;
  double decay_factor = 0.1;
  std::size_t decay_epoch = 20;  // last epoch run at base_lr
  std::uint64_t seed = 0;
  std::filesystem::path degraded_dir;
  std::filesystem::path original_dir;
  std::size_t width = 0;
  std::size_t height = 0;
  NetworkConfig network;
  std::optional<std::filesystem::path> init_checkpoint;
  std::filesystem::path output = "model.cbw";
};

/// Learning rate for a 1-based epoch: base_lr through decay_epoch, then
/// base_lr * decay_factor.
double learning_rate(const TrainConfig& cfg, std::size_t epoch);

/// One line listing every setting, defaults resolved.
std::string describe(const TrainConfig& cfg);

/// Best-loss checkpoint written next to `output`: model.cbw -> model.best.cbw.
std::filesystem::path best_checkpoint_path(const std::filesystem::path& output);

struct EpochLog {
  std::size_t epoch = 0;
  double lr = 0.0;
  double mean_loss = 0.0;
  std::size_t steps = 0;
};

struct StepLog {
  std::size_t epoch = 0;
  std::size_t step = 0;  // global, 0-based
  double lr = 0.0;
  double loss = 0.0;  // before the update
};

struct TrainHooks {
  std::function<void(const EpochLog&)> on_epoch;
  std::function<void(const StepLog&)> on_step;
};

struct TrainResult {
  ModelParams params;
  std::vector<EpochLog> history;
  double best_loss = 0.0;
  std::vector<std::uint8_t> best_checkpoint;  // serialized params at the best epoch
};

/// Adam on the L1 loss between model_forward(degraded U, degraded Y) and
/// original U. Mutates and returns `params`. Throws NumericError with the
/// epoch and step if the loss or any gradient becomes non-finite.
TrainResult run_training(const TrainConfig& cfg, const Dataset& dataset, ModelParams params,
                         const TrainHooks& hooks = {});

/// Builds the dataset from cfg's directories, initialises the model (seeded
/// He init, or cfg.init_checkpoint) and writes the final and best-loss
/// checkpoints.
TrainResult train(const TrainConfig& cfg, const TrainHooks& hooks = {});

/// train() starting from `base_checkpoint`.
TrainResult finetune(const std::filesystem::path& base_checkpoint, TrainConfig cfg, const TrainHooks& hooks = {});

/// Mean L1 loss over every pair, without recording a graph.
double evaluate_loss(const ModelParams& params, const Dataset& dataset, std::size_t batch_size = 32);

}  // namespace lgce

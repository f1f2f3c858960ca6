#include "lgce/train.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "lgce/adam.hpp"
#include "lgce/autograd.hpp"
#include "lgce/checkpoint.hpp"
#include "lgce/errors.hpp"

namespace lgce {

namespace {

constexpr std::uint64_t kSamplerStream = 0x6A09E667F3BCC909ULL;

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace

double learning_rate(const TrainConfig& cfg, std::size_t epoch) {
  return epoch <= cfg.decay_epoch ? cfg.base_lr : cfg.base_lr * cfg.decay_factor;
}

std::string describe(const TrainConfig& cfg) {
  std::ostringstream out;
  out << "qp=" << cfg.qp << " batch_size=" << cfg.batch_size << " epochs=" << cfg.epochs << " base_lr=" << cfg.base_lr
      << " decay_factor=" << cfg.decay_factor << " decay_epoch=" << cfg.decay_epoch << " seed=" << cfg.seed
      << " degraded_dir=" << cfg.degraded_dir.string() << " original_dir=" << cfg.original_dir.string()
      << " width=" << cfg.width << " height=" << cfg.height << " feature_width=" << cfg.network.feature_width
      << " leaky_slope=" << cfg.network.leaky_slope << " gate_init=" << cfg.network.gate_init << " luma_guidance=" << (cfg.network.luma_guidance ? 1 : 0)
      << " init_checkpoint=" << (cfg.init_checkpoint ? cfg.init_checkpoint->string() : "none")
      << " output=" << cfg.output.string();
  return out.str();
}

std::filesystem::path best_checkpoint_path(const std::filesystem::path& output) {
  std::filesystem::path best = output;
  best.replace_filename(output.stem().string() + ".best" + output.extension().string());
  return best;
}

TrainResult run_training(const TrainConfig& cfg, const Dataset& dataset, ModelParams params,
                         const TrainHooks& hooks) {
  if (dataset.size() == 0) throw DataError("cannot train on an empty dataset");
  BatchSampler sampler(dataset.size(), cfg.batch_size, cfg.seed ^ kSamplerStream);
  std::vector<Tensor> weights = parameter_list(params);
  AdamState state = AdamState::for_params(weights);

  TrainResult result;
  result.best_checkpoint = serialize_model(params);
  result.best_loss = INFINITY;
  std::size_t global_step = 0;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const double lr = learning_rate(cfg, epoch);
    double loss_sum = 0.0;
    const auto batches = sampler.next_epoch();
    for (const auto& indices : batches) {
      const Batch batch = make_batch(dataset, indices);
      for (Tensor& w : weights) w.zero_grad();
      try {
        const Tensor loss = l1_loss(model_forward(batch.chroma, batch.luma, params), batch.target);
        const double value = loss.item();
        if (!std::isfinite(value)) throw NumericError("loss is " + std::to_string(value));
        if (hooks.on_step) hooks.on_step({epoch, global_step, lr, value});
        backward(loss);
        adam_step(weights, state, lr);
        loss_sum += value;
      } catch (const NumericError& e) {
        std::ostringstream msg;
        msg << "training diverged at epoch " << epoch << ", step " << global_step << " (lr " << lr
            << ", qp " << cfg.qp << "): " << e.what();
        throw NumericError(msg.str());
      }
      ++global_step;
    }
    EpochLog log{epoch, lr, loss_sum / static_cast<double>(batches.size()), batches.size()};
    result.history.push_back(log);
    if (log.mean_loss < result.best_loss) {
      result.best_loss = log.mean_loss;
      result.best_checkpoint = serialize_model(params);
    }
    if (hooks.on_epoch) hooks.on_epoch(log);
  }
  result.params = std::move(params);
  return result;
}

TrainResult train(const TrainConfig& cfg, const TrainHooks& hooks) {
  const Dataset dataset = build_dataset(cfg.degraded_dir, cfg.original_dir, cfg.width, cfg.height);
  ModelParams params;
  if (cfg.init_checkpoint) {
    params = load_model(*cfg.init_checkpoint, cfg.network);
    if (params.feature_width() != cfg.network.feature_width) {
      throw ShapeError("checkpoint feature width " + std::to_string(params.feature_width()) +
                       " does not match configured width " + std::to_string(cfg.network.feature_width));
    }
  } else {
    Rng rng(cfg.seed);
    params = init_model(cfg.network, rng);
  }
  TrainResult result = run_training(cfg, dataset, std::move(params), hooks);
  save_checkpoint(cfg.output, result.params);
  write_bytes(best_checkpoint_path(cfg.output), result.best_checkpoint);
  return result;
}

TrainResult finetune(const std::filesystem::path& base_checkpoint, TrainConfig cfg, const TrainHooks& hooks) {
  cfg.init_checkpoint = base_checkpoint;
  return train(cfg, hooks);
}

double evaluate_loss(const ModelParams& params, const Dataset& dataset, std::size_t batch_size) {
  if (dataset.size() == 0) throw DataError("cannot evaluate on an empty dataset");
  NoGradGuard no_grad;
  double weighted = 0.0;
  std::vector<std::size_t> indices;
  for (std::size_t start = 0; start < dataset.size(); start += batch_size) {
    indices.clear();
    for (std::size_t i = start; i < std::min(dataset.size(), start + batch_size); ++i) indices.push_back(i);
    const Batch batch = make_batch(dataset, indices);
    const double loss = l1_loss(model_forward(batch.chroma, batch.luma, params), batch.target).item();
    weighted += loss * static_cast<double>(indices.size());
  }
  return weighted / static_cast<double>(dataset.size());
}

}  // namespace lgce

#include <benchmark/benchmark.h>

#include "lgce/adam.hpp"
#include "lgce/autograd.hpp"
#include "lgce/enhance.hpp"
#include "lgce/metrics.hpp"
#include "lgce/network.hpp"
#include "lgce/ops.hpp"
#include "lgce/rng.hpp"

using namespace lgce;

namespace {

Tensor random_tensor(Shape shape, Rng& rng, bool grad = false) {
  std::vector<float> v(shape_numel(shape));
  for (float& x : v) x = static_cast<float>(rng.normal() * 0.1);
  return Tensor::from_data(std::move(shape), std::move(v), grad);
}

// Args: channels, spatial size, kernel.
void BM_Conv2dForward(benchmark::State& state) {
  const auto c = static_cast<std::size_t>(state.range(0));
  const auto hw = static_cast<std::size_t>(state.range(1));
  const auto k = static_cast<std::size_t>(state.range(2));
  Rng rng(1);
  const Tensor x = random_tensor({1, c, hw, hw}, rng);
  const Tensor w = random_tensor({c, c, k, k}, rng);
  const Tensor b = random_tensor({c}, rng);
  NoGradGuard guard;
  for (auto _ : state) benchmark::DoNotOptimize(conv2d(x, w, b, 1, static_cast<int>(k / 2)));
  state.counters["FLOP/s"] = benchmark::Counter(2.0 * static_cast<double>(c * c * k * k * hw * hw),
                                                benchmark::Counter::kIsIterationInvariantRate,
                                                benchmark::Counter::kIs1000);
}
BENCHMARK(BM_Conv2dForward)->Args({16, 32, 3})->Args({64, 32, 3})->Args({64, 64, 3})->Args({64, 32, 1});

void BM_Conv2dForwardBackward(benchmark::State& state) {
  const auto c = static_cast<std::size_t>(state.range(0));
  const auto hw = static_cast<std::size_t>(state.range(1));
  Rng rng(2);
  const Tensor x = random_tensor({1, c, hw, hw}, rng, true);
  const Tensor w = random_tensor({c, c, 3, 3}, rng, true);
  const Tensor b = random_tensor({c}, rng, true);
  const Tensor target = Tensor::zeros({1, c, hw, hw});
  for (auto _ : state) backward(l1_loss(conv2d(x, w, b, 1, 1), target));
}
BENCHMARK(BM_Conv2dForwardBackward)->Args({16, 32})->Args({64, 32});

// One Adam training step on a batch of patch pairs. Args: width, batch.
void BM_TrainStep(benchmark::State& state) {
  NetworkConfig cfg;
  cfg.feature_width = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  Rng rng(3);
  ModelParams p = init_model(cfg, rng);
  std::vector<Tensor> params = parameter_list(p);
  AdamState adam = AdamState::for_params(params);
  const Tensor chroma = random_tensor({n, 1, 32, 32}, rng);
  const Tensor luma = random_tensor({n, 1, 64, 64}, rng);
  const Tensor target = random_tensor({n, 1, 32, 32}, rng);
  for (auto _ : state) {
    for (Tensor& t : params) t.zero_grad();
    backward(l1_loss(model_forward(chroma, luma, p), target));
    adam_step(params, adam, 1e-4);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_TrainStep)->Args({16, 1})->Args({16, 4})->Args({64, 1})->Unit(benchmark::kMillisecond);

void BM_EnhanceFrame(benchmark::State& state) {
  NetworkConfig cfg;
  cfg.feature_width = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  const ModelParams p = init_model(cfg, rng);
  YuvImage img = YuvImage::blank(256, 256);
  for (Plane* pl : {&img.y, &img.u, &img.v})
    for (auto& s : pl->samples) s = static_cast<std::uint8_t>(rng.uniform_index(256));
  for (auto _ : state) benchmark::DoNotOptimize(enhance_frame(img, p, PlaneSelection::Both));
}
BENCHMARK(BM_EnhanceFrame)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_BdRate(benchmark::State& state) {
  const std::vector<RdPoint> a{{100, 30}, {200, 33}, {400, 36}, {800, 39}};
  const std::vector<RdPoint> b{{120, 31.2}, {260, 33.9}, {490, 36.4}, {1010, 38.1}};
  for (auto _ : state) benchmark::DoNotOptimize(bd_rate(a, b));
}
BENCHMARK(BM_BdRate);

}  // namespace
BENCHMARK_MAIN();

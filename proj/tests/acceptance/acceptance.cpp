// Acceptance gate: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "fixtures.hpp"
#include "gradcheck.hpp"
#include "lgce/adam.hpp"
#include "lgce/autograd.hpp"
#include "lgce/checkpoint.hpp"
#include "lgce/color.hpp"
#include "lgce/dataset.hpp"
#include "lgce/degrade.hpp"
#include "lgce/enhance.hpp"
#include "lgce/metrics.hpp"
#include "lgce/network.hpp"
#include "lgce/train.hpp"
#include "lgce/yuv_io.hpp"
#include "reference.hpp"

using namespace lgce;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome gradient_suite() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::string worst_op;
  std::size_t ops = 0;
  for (const auto& c : test::op_cases()) {
    const test::GradResult r = test::check_gradients(c, 5, 2024);
    ++ops;
    if (r.max_rel_error >= worst) {
      worst = r.max_rel_error;
      worst_op = r.name;
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-4 && secs < 30.0,
          fmt("%zu ops x 5 points, worst rel err %.2e (%s), %.2fs", ops, worst, worst_op.c_str(), secs)};
}

Outcome architecture_invariants() {
  Rng rng(31);
  NetworkConfig cfg;  // default width
  ModelParams p = init_model(cfg, rng);
  std::vector<std::string> failures;

  std::vector<float> xv(2 * 16 * 16);
  for (float& v : xv) v = static_cast<float>(rng.uniform());
  const Tensor x = Tensor::from_data({2, 1, 16, 16}, xv);
  ModelParams gated = clone_model(p);
  for (auto& g : gated.grab.gates) g.mutable_data()[0] = 0.0f;
  {
    NoGradGuard guard;
    const Tensor y = grab_forward(x, gated.grab);
    const Tensor y0 = apply_conv(gated.grab.conv_in, x);
    bool same = y.shape() == y0.shape();
    for (std::size_t i = 0; same && i < y.numel(); ++i) same = y.at(i) == y0.at(i);
    if (!same) failures.push_back("gate-zero GRAB != conv_in");

    const ModelParams zero = zero_model(cfg);
    std::vector<float> lv(2 * 32 * 32);
    for (float& v : lv) v = static_cast<float>(rng.uniform());
    const Tensor out = model_forward(x, Tensor::from_data({2, 1, 32, 32}, lv), zero);
    bool ident = out.shape() == x.shape();
    for (std::size_t i = 0; ident && i < out.numel(); ++i) ident = out.at(i) == x.at(i);
    if (!ident) failures.push_back("zero model is not the identity");
  }

  // Count by walking a serialized checkpoint; compare with the closed form.
  const std::size_t c = cfg.feature_width;
  std::size_t grab_walk = 0, ru_walk = 0, conv_in_walk = 0, gates = 0;
  for (const auto& t : deserialize_tensors(serialize_model(p))) {
    if (t.name.rfind("grab.", 0) != 0) continue;
    grab_walk += t.tensor.numel();
    if (t.name.rfind("grab.ru.", 0) == 0) ru_walk += t.tensor.numel();
    if (t.name.rfind("grab.conv_in.", 0) == 0) conv_in_walk += t.tensor.numel();
    if (t.name.rfind("grab.gate.", 0) == 0) gates += t.tensor.numel();
  }
  const std::size_t au = 3 * (c * c + c) + 2 * (9 * c * c + c);
  const std::size_t one_ru = 2 * au + 9 * c * c + c;
  if (grab_walk != one_ru + (9 * c + c) + 6 || ru_walk != one_ru || conv_in_walk != 10 * c || gates != 6) {
    failures.push_back(fmt("GRAB count %zu != %zu + %zu + 6", grab_walk, one_ru, 10 * c));
  }

  std::size_t shapes = 0;
  {
    NoGradGuard guard;
    for (std::size_t h : {8, 16, 32})
      for (std::size_t w : {8, 16, 32}) {
        const Tensor chroma = Tensor::full({1, 1, h, w}, 0.5f);
        const Tensor luma = Tensor::full({1, 1, 2 * h, 2 * w}, 0.5f);
        const Tensor a = apply_conv(p.fuse, grab_forward(chroma, p.grab));
        const Tensor b = luma_branch(luma, p);
        const Tensor o = model_forward(chroma, luma, p);
        if (a.shape() == b.shape() && a.shape() == Shape{1, c, h, w} && o.shape() == chroma.shape()) ++shapes;
      }
  }
  if (shapes != 9) failures.push_back(fmt("fusion shapes agree for only %zu of 9 sizes", shapes));

  std::string detail = fmt("C=%zu, GRAB params %zu = RU %zu + conv_in %zu + 6, shapes ok %zu/9", c, grab_walk, one_ru,
                           10 * c, shapes);
  for (const auto& f : failures) detail += "; " + f;
  return {failures.empty(), detail};
}

Outcome overfit() {
  const auto orig = test::make_yuv_scenes(1, 64, 64, 42);
  const std::vector<YuvImage> deg{synth_degrade(orig[0], 2, 3)};
  const Dataset ds = dataset_from_frames(deg, orig);
  const std::vector<std::size_t> idx{0};
  const Batch batch = make_batch(ds, idx);

  NetworkConfig cfg;
  Rng rng(1);
  ModelParams p = init_model(cfg, rng);
  std::vector<Tensor> params = parameter_list(p);
  AdamState state = AdamState::for_params(params);

  const auto t0 = Clock::now();
  double initial = 0.0;
  for (int step = 0; step < 500; ++step) {
    for (Tensor& t : params) t.zero_grad();
    const Tensor loss = l1_loss(model_forward(batch.chroma, batch.luma, p), batch.target);
    if (step == 0) initial = loss.item();
    backward(loss);
    adam_step(params, state, 1e-4);
  }
  double final_loss = 0.0;
  {
    NoGradGuard guard;
    final_loss = l1_loss(model_forward(batch.chroma, batch.luma, p), batch.target).item();
  }
  const double secs = seconds_since(t0);
  double input_l1 = 0.0;
  for (std::size_t i = 0; i < batch.chroma.numel(); ++i) input_l1 += std::abs(batch.chroma.at(i) - batch.target.at(i));
  input_l1 /= static_cast<double>(batch.chroma.numel());
  return {final_loss < 0.1 * initial && secs < 300.0,
          fmt("C=%zu, L1 %.5f -> %.5f (%.3f%% of initial; degraded-input L1 %.5f), %.0fs", cfg.feature_width, initial,
              final_loss, 100.0 * final_loss / initial, input_l1, secs)};
}

Outcome end_to_end() {
  const auto t0 = Clock::now();
  const auto orig = test::make_yuv_scenes(25, 64, 64, 1000);
  std::vector<YuvImage> deg;
  for (std::size_t i = 0; i < orig.size(); ++i) deg.push_back(synth_degrade(orig[i], 2, 500 + i));
  const std::span<const YuvImage> d(deg), o(orig);
  const Dataset train_set = dataset_from_frames(d.first(20), o.first(20));

  TrainConfig cfg;
  cfg.epochs = 200;
  cfg.batch_size = 4;
  cfg.base_lr = 1e-3;
  cfg.decay_epoch = 150;
  cfg.network.feature_width = 16;
  cfg.seed = 7;
  Rng rng(cfg.seed);
  const TrainResult result = run_training(cfg, train_set, init_model(cfg.network, rng));

  double du = 0.0, dv = 0.0;
  for (std::size_t i = 20; i < 25; ++i) {
    const YuvImage e = enhance_frame(deg[i], result.params, PlaneSelection::Both);
    du += delta_psnr(e.u, deg[i].u, orig[i].u);
    dv += delta_psnr(e.v, deg[i].v, orig[i].v);
  }
  du /= 5.0;
  dv /= 5.0;
  const double secs = seconds_since(t0);
  return {du > 0.0 && dv > 0.0 && secs < 7200.0,
          fmt("%zu U patches, C=%zu batch=%zu lr=%g, held-out dPSNR U %+.3f dB (expected margin +0.3: %s), "
              "V %+.3f dB, %.0fs",
              train_set.size(), cfg.network.feature_width, cfg.batch_size, cfg.base_lr, du, du > 0.3 ? "met" : "not met",
              dv, secs)};
}

Outcome metric_oracles() {
  std::vector<std::string> failures;
  const Plane a(16, 16, 100);
  const double p1 = psnr(a, Plane(16, 16, 101));
  const double p255 = psnr(Plane(16, 16, 0), Plane(16, 16, 255));
  if (std::abs(p1 - 48.1308) > 1e-4) failures.push_back(fmt("psnr diff1 %.6f", p1));
  if (std::abs(p255) > 1e-4) failures.push_back(fmt("psnr diff255 %.6f", p255));

  const std::vector<RdPoint> anchor{{100, 30}, {200, 33}, {400, 36}, {800, 39}};
  auto scaled = anchor, shifted = anchor;
  for (auto& p : scaled) p.rate *= 1.1;
  for (auto& p : shifted) p.psnr += 1.0;
  const double same = bd_rate(anchor, anchor);
  const double ten = bd_rate(anchor, scaled);
  if (same != 0.0 && std::abs(same) > 1e-12) failures.push_back(fmt("identical %.3e", same));
  if (std::abs(ten - 10.0) > 1e-6) failures.push_back(fmt("x1.1 %.9f", ten));

  const std::vector<RdPoint> other{{120, 31.2}, {260, 33.9}, {490, 36.4}, {1010, 38.1}};
  const double ab = bd_rate(anchor, other), ba = bd_rate(other, anchor);
  const double anti = std::abs((1 + ab / 100) * (1 + ba / 100) - 1.0);
  if (anti > 1e-9) failures.push_back(fmt("antisymmetry %.3e", anti));

  std::vector<double> ps, lr, ps2, lr2;
  for (const auto& p : anchor) ps.push_back(p.psnr), lr.push_back(std::log10(p.rate));
  for (const auto& p : shifted) ps2.push_back(p.psnr), lr2.push_back(std::log10(p.rate));
  const double lo = 31.0, hi = 39.0;
  const double ia = ref::trapezoid([&](double t) { return ref::lagrange(ps, lr, t); }, lo, hi, 10000);
  const double it = ref::trapezoid([&](double t) { return ref::lagrange(ps2, lr2, t); }, lo, hi, 10000);
  const double oracle = (std::pow(10.0, (it - ia) / (hi - lo)) - 1.0) * 100.0;
  const double got = bd_rate(anchor, shifted);
  if (std::abs(got - oracle) > 0.01) failures.push_back(fmt("fixture %.6f vs oracle %.6f", got, oracle));

  std::string detail = fmt("psnr %.4f / %.4f dB, BD same %.1e, x1.1 %+.8f%%, antisym %.1e, fixture %.5f%% vs oracle %.5f%%",
                           p1, p255, same, ten, anti, got, oracle);
  for (const auto& f : failures) detail += "; " + f;
  return {failures.empty(), detail};
}

Outcome color_conversion() {
  std::vector<std::string> failures;
  auto bytes = [](std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    RgbImage img(1, 1);
    img.pixels = {r, g, b};
    const Yuv444 y = rgb_to_yuv444(img);
    return std::array<int, 3>{quantize_sample(y.y.samples[0]), quantize_sample(y.u.samples[0]),
                              quantize_sample(y.v.samples[0])};
  };
  if (bytes(0, 0, 0) != std::array<int, 3>{16, 128, 128}) failures.push_back("black");
  if (bytes(255, 255, 255) != std::array<int, 3>{255, 128, 128}) failures.push_back("white");

  RgbImage lattice(17 * 17 * 17, 1);
  for (std::size_t i = 0; i < 17 * 17 * 17; ++i) {
    const std::size_t idx[3] = {i / 289, (i / 17) % 17, i % 17};
    for (int c = 0; c < 3; ++c) lattice.pixels[i * 3 + c] = static_cast<std::uint8_t>(std::min<std::size_t>(255, idx[c] * 16));
  }
  const Yuv444 yuv = rgb_to_yuv444(lattice);
  Plane qy(lattice.width, 1), qu(lattice.width, 1), qv(lattice.width, 1);
  for (std::size_t i = 0; i < lattice.width; ++i) {
    qy.samples[i] = quantize_sample(yuv.y.samples[i]);
    qu.samples[i] = quantize_sample(yuv.u.samples[i]);
    qv.samples[i] = quantize_sample(yuv.v.samples[i]);
  }
  // Round trip through real-valued planes and through 8-bit samples.
  const RgbImage back_real = yuv444_to_rgb(yuv.y, yuv.u, yuv.v);
  const RgbImage back_bytes = yuv444_to_rgb(qy, qu, qv);
  std::size_t in_gamut = 0;
  int worst_real = 0, worst_bytes = 0;
  for (std::size_t i = 0; i < 17 * 17 * 17; ++i) {
    const double s[3] = {yuv.y.samples[i], yuv.u.samples[i], yuv.v.samples[i]};
    if (s[0] < 0 || s[0] > 255 || s[1] < 0 || s[1] > 255 || s[2] < 0 || s[2] > 255) continue;
    ++in_gamut;
    for (int c = 0; c < 3; ++c) {
      const int orig = lattice.pixels[i * 3 + c];
      worst_real = std::max(worst_real, std::abs(int(back_real.pixels[i * 3 + c]) - orig));
      worst_bytes = std::max(worst_bytes, std::abs(int(back_bytes.pixels[i * 3 + c]) - orig));
    }
  }
  if (worst_real > 1 || worst_bytes > 1) failures.push_back("round-trip error above 1");
  std::string detail = fmt("(0,0,0)->(16,128,128), white->(255,128,128), lattice %zu in-gamut of 4913, max error "
                           "%d (real YUV) / %d (8-bit YUV)",
                           in_gamut, worst_real, worst_bytes);
  for (const auto& f : failures) detail += "; " + f;
  return {failures.empty(), detail};
}

Outcome reproducibility() {
  test::TempDir dir("accept_repro");
  std::filesystem::create_directories(dir / "deg");
  std::filesystem::create_directories(dir / "orig");
  const auto scenes = test::make_yuv_scenes(6, 64, 64, 77);
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    write_yuv420(scenes[i], dir / "orig" / "s.yuv", i > 0);
    write_yuv420(synth_degrade(scenes[i], 2, i), dir / "deg" / "s.yuv", i > 0);
  }
  TrainConfig cfg;
  cfg.degraded_dir = dir / "deg";
  cfg.original_dir = dir / "orig";
  cfg.width = 64;
  cfg.height = 64;
  cfg.epochs = 3;
  cfg.batch_size = 2;
  cfg.network.feature_width = 8;
  cfg.seed = 11;
  cfg.output = dir / "a.cbw";
  train(cfg);
  cfg.output = dir / "b.cbw";
  train(cfg);
  const auto a = test::read_bytes(dir / "a.cbw"), b = test::read_bytes(dir / "b.cbw");
  const auto ab = test::read_bytes(dir / "a.best.cbw"), bb = test::read_bytes(dir / "b.best.cbw");
  return {!a.empty() && a == b && ab == bb, fmt("two runs, %zu-byte checkpoints %s", a.size(), a == b ? "identical" : "differ")};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto wanted = [&](int n) { return only.empty() || only.count(n) > 0; };

  std::printf("N/A  [1] full-scale BD-rate targets (U 28.96%%, V 16.74%%): documentation only (see README)\n");
  const std::vector<std::pair<int, std::pair<const char*, std::function<Outcome()>>>> criteria{
      {2, {"gradient suite", gradient_suite}},
      {3, {"architecture invariants", architecture_invariants}},
      {4, {"single-patch overfit", overfit}},
      {5, {"end-to-end fixture", end_to_end}},
      {6, {"metric oracles", metric_oracles}},
      {7, {"color conversion", color_conversion}},
      {8, {"training reproducibility", reproducibility}},
  };
  int failed = 0;
  for (const auto& [n, entry] : criteria) {
    if (!wanted(n)) continue;
    Outcome o;
    try {
      o = entry.second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", n, entry.first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

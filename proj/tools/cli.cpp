#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lgce/checkpoint.hpp"
#include "lgce/color.hpp"
#include "lgce/degrade.hpp"
#include "lgce/enhance.hpp"
#include "lgce/errors.hpp"
#include "lgce/metrics.hpp"
#include "lgce/ppm.hpp"
#include "lgce/report.hpp"
#include "lgce/train.hpp"
#include "lgce/yuv_io.hpp"

namespace lgce::cli {

namespace {

enum class LogLevel { Quiet, Info, Debug };

LogLevel log_level() {
  const char* env = std::getenv("LGCE_LOG");
  if (!env) return LogLevel::Info;
  const std::string level(env);
  if (level == "quiet") return LogLevel::Quiet;
  if (level == "debug") return LogLevel::Debug;
  return LogLevel::Info;
}

struct ConvertArgs {
  std::string input;
  std::string output;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t frame = 0;
};

struct DegradeArgs {
  std::string input;
  std::string output;
  std::size_t width = 0;
  std::size_t height = 0;
  int severity = 2;
  std::uint64_t seed = 0;
};

struct TrainArgs {
  TrainConfig cfg;
  std::string config_file;
  std::string base;
  std::string init_checkpoint;
  bool no_luma = false;
  CLI::Option* feature_width_opt = nullptr;
};

struct EnhanceArgs {
  std::string input;
  std::string output;
  std::string checkpoint;
  std::size_t width = 0;
  std::size_t height = 0;
  std::string plane = "both";
  std::size_t tiles_per_batch = 16;
  bool no_luma = false;
};

struct EvalArgs {
  std::string degraded;
  std::string enhanced;
  std::string original;
  std::size_t width = 0;
  std::size_t height = 0;
  std::string csv;
};

struct BdArgs {
  std::string anchor;
  std::string test;
};

bool has_extension(const std::string& path, const char* ext) {
  return std::filesystem::path(path).extension() == ext;
}

int do_convert(const ConvertArgs& a, std::ostream& out) {
  out << "config: command=convert input=" << a.input << " output=" << a.output << " width=" << a.width
      << " height=" << a.height << " frame=" << a.frame << '\n';
  if (has_extension(a.input, ".ppm")) {
    write_yuv420(rgb_to_yuv420(read_ppm(a.input)), a.output);
    return kExitOk;
  }
  if (a.width == 0 || a.height == 0) throw std::invalid_argument("--width and --height are required for YUV input");
  write_ppm(yuv420_to_rgb(read_yuv420(a.input, a.width, a.height, a.frame)), a.output);
  return kExitOk;
}

int do_degrade(const DegradeArgs& a, std::ostream& out) {
  out << "config: command=degrade input=" << a.input << " output=" << a.output << " width=" << a.width
      << " height=" << a.height << " severity=" << a.severity << " seed=" << a.seed << '\n';
  const auto frames = read_all_yuv420(a.input, a.width, a.height);
  for (std::size_t f = 0; f < frames.size(); ++f) {
    write_yuv420(synth_degrade(frames[f], a.severity, a.seed + f), a.output, f > 0);
  }
  return kExitOk;
}

int do_train(TrainArgs& a, bool is_finetune, std::ostream& out) {
  TrainConfig cfg = a.cfg;
  cfg.network.luma_guidance = !a.no_luma;
  if (!a.init_checkpoint.empty()) cfg.init_checkpoint = a.init_checkpoint;
  if (is_finetune) {
    cfg.init_checkpoint = a.base;
    if (a.feature_width_opt->count() == 0) {
      cfg.network.feature_width = model_from_tensors(read_checkpoint(a.base), cfg.network).feature_width();
    }
  }
  out << "config: command=" << (is_finetune ? "finetune" : "train") << ' ' << describe(cfg) << '\n';
  const LogLevel level = log_level();
  TrainHooks hooks;
  hooks.on_epoch = [&](const EpochLog& log) {
    if (level == LogLevel::Quiet) return;
    out << "epoch " << log.epoch << '/' << cfg.epochs << " lr=" << log.lr << " mean_l1=" << log.mean_loss
        << " steps=" << log.steps << std::endl;
  };
  if (level == LogLevel::Debug) {
    hooks.on_step = [&](const StepLog& log) {
      out << "  step " << log.step << " loss=" << log.loss << std::endl;
    };
  }
  const TrainResult result = train(cfg, hooks);
  if (level != LogLevel::Quiet) {
    out << "wrote " << cfg.output.string() << " and " << best_checkpoint_path(cfg.output).string()
        << " (best mean_l1=" << result.best_loss << ")\n";
  }
  return kExitOk;
}

int do_enhance(const EnhanceArgs& a, std::ostream& out) {
  const PlaneSelection selection = parse_plane_selection(a.plane);
  out << "config: command=enhance input=" << a.input << " output=" << a.output << " checkpoint=" << a.checkpoint
      << " width=" << a.width << " height=" << a.height << " plane=" << to_string(selection)
      << " tiles_per_batch=" << a.tiles_per_batch << " luma_guidance=" << (a.no_luma ? 0 : 1) << '\n';
  require_even_dims(a.width, a.height, "enhance");
  NetworkConfig network;
  network.luma_guidance = !a.no_luma;
  const ModelParams params = load_model(a.checkpoint, network);
  const std::size_t frames = count_yuv420_frames(a.input, a.width, a.height);
  for (std::size_t f = 0; f < frames; ++f) {
    const YuvImage frame = read_yuv420(a.input, a.width, a.height, f);
    write_yuv420(enhance_frame(frame, params, selection, a.tiles_per_batch), a.output, f > 0);
  }
  if (log_level() != LogLevel::Quiet) out << "enhanced " << frames << " frame(s)\n";
  return kExitOk;
}

int do_eval(const EvalArgs& a, std::ostream& out) {
  out << "config: command=eval degraded=" << a.degraded << " enhanced=" << a.enhanced << " original=" << a.original
      << " width=" << a.width << " height=" << a.height << " csv=" << (a.csv.empty() ? "none" : a.csv) << '\n';
  const EvalReport report = evaluate_files(a.degraded, a.enhanced, a.original, a.width, a.height);
  out << format_table(report);
  if (!a.csv.empty()) {
    std::ofstream csv(a.csv, std::ios::trunc);
    if (!csv) throw DataError("cannot open " + a.csv + " for writing");
    csv << format_csv(report);
  }
  return kExitOk;
}

int do_bdrate(const BdArgs& a, std::ostream& out) {
  out << "config: command=bdrate anchor=" << a.anchor << " test=" << a.test << " method=" << kBdVariant << '\n';
  const auto anchor = read_rd_curve(a.anchor);
  const auto test = read_rd_curve(a.test);
  const double rate = bd_rate(anchor, test);
  const double quality = bd_psnr(anchor, test);
  std::ostringstream line;
  line.precision(6);
  line << std::fixed << "BD-rate: " << rate << " %\nBD-PSNR: " << quality << " dB\n";
  out << line.str();
  return kExitOk;
}

void add_train_options(CLI::App* cmd, TrainArgs& a) {
  TrainConfig& c = a.cfg;
  cmd->add_option("--degraded-dir", c.degraded_dir, "Directory of degraded .yuv files")->required();
  cmd->add_option("--original-dir", c.original_dir, "Directory of original .yuv files (same names)")->required();
  cmd->add_option("--width", c.width, "Frame width")->required();
  cmd->add_option("--height", c.height, "Frame height")->required();
  cmd->add_option("--qp", c.qp, "QP label of the training data")->capture_default_str();
  cmd->add_option("--batch-size", c.batch_size)->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--epochs", c.epochs)->capture_default_str();
  cmd->add_option("--lr", c.base_lr, "Initial learning rate")->capture_default_str();
  cmd->add_option("--decay-factor", c.decay_factor)->capture_default_str();
  cmd->add_option("--decay-epoch", c.decay_epoch, "Last epoch at the initial learning rate")->capture_default_str();
  cmd->add_option("--seed", c.seed)->capture_default_str();
  a.feature_width_opt =
      cmd->add_option("--feature-width", c.network.feature_width)->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--leaky-slope", c.network.leaky_slope)->capture_default_str();
  cmd->add_option("--gate-init", c.network.gate_init)->capture_default_str();
  cmd->add_flag("--no-luma", a.no_luma, "Disable the luminance branch (chroma-only ablation)");
  cmd->add_option("--output", c.output, "Final checkpoint path")->capture_default_str();
  cmd->add_option("--config", a.config_file, "key=value file; flags given on the command line win")
      ->check(CLI::ExistingFile);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Keys are long option names without dashes; '_' and '-' are interchangeable.
void apply_config_file(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (!opt || key == "config") {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (opt->count() > 0) continue;
    opt->add_result(trim(line.substr(eq + 1)));
    opt->run_callback();
  }
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Luminance-guided chroma enhancement for compressed YUV 4:2:0 images", "lgce"};
  app.require_subcommand(1);

  ConvertArgs convert_args;
  auto* convert = app.add_subcommand("convert", "PPM (P6) <-> raw I420 conversion");
  convert->add_option("--input", convert_args.input)->required();
  convert->add_option("--output", convert_args.output)->required();
  convert->add_option("--width", convert_args.width);
  convert->add_option("--height", convert_args.height);
  convert->add_option("--frame", convert_args.frame)->capture_default_str();

  DegradeArgs degrade_args;
  auto* degrade_cmd = app.add_subcommand("degrade", "Synthetic blur + chroma noise degradation");
  degrade_cmd->add_option("--input", degrade_args.input)->required();
  degrade_cmd->add_option("--output", degrade_args.output)->required();
  degrade_cmd->add_option("--width", degrade_args.width)->required();
  degrade_cmd->add_option("--height", degrade_args.height)->required();
  degrade_cmd->add_option("--severity", degrade_args.severity)->capture_default_str()->check(CLI::Range(1, 4));
  degrade_cmd->add_option("--seed", degrade_args.seed)->capture_default_str();

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train from scratch on U-plane patches");
  add_train_options(train_cmd, train_args);
  train_cmd->add_option("--init-checkpoint", train_args.init_checkpoint, "Start from these weights");

  TrainArgs finetune_args;
  auto* finetune_cmd = app.add_subcommand("finetune", "Continue training from a base checkpoint");
  add_train_options(finetune_cmd, finetune_args);
  finetune_cmd->add_option("--base", finetune_args.base, "Base checkpoint")->required();

  EnhanceArgs enhance_args;
  auto* enhance = app.add_subcommand("enhance", "Enhance the chroma planes of an I420 file");
  enhance->add_option("--input", enhance_args.input)->required();
  enhance->add_option("--output", enhance_args.output)->required();
  enhance->add_option("--checkpoint", enhance_args.checkpoint)->required();
  enhance->add_option("--width", enhance_args.width)->required();
  enhance->add_option("--height", enhance_args.height)->required();
  enhance->add_option("--plane", enhance_args.plane, "u, v or both")->capture_default_str();
  enhance->add_option("--tiles-per-batch", enhance_args.tiles_per_batch)->capture_default_str();
  enhance->add_flag("--no-luma", enhance_args.no_luma, "Model was trained without the luminance branch");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Per-plane PSNR / delta-PSNR report");
  eval->add_option("--degraded", eval_args.degraded)->required();
  eval->add_option("--enhanced", eval_args.enhanced)->required();
  eval->add_option("--original", eval_args.original)->required();
  eval->add_option("--width", eval_args.width)->required();
  eval->add_option("--height", eval_args.height)->required();
  eval->add_option("--csv", eval_args.csv, "Also write the report as CSV");

  BdArgs bd_args;
  auto* bdrate = app.add_subcommand("bdrate", "Bjontegaard delta rate between two RD curves");
  bdrate->add_option("--anchor", bd_args.anchor, "CSV of rate,psnr")->required();
  bdrate->add_option("--test", bd_args.test, "CSV of rate,psnr")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*convert) return do_convert(convert_args, out);
    if (*degrade_cmd) return do_degrade(degrade_args, out);
    if (*train_cmd) {
      if (!train_args.config_file.empty()) apply_config_file(train_cmd, train_args.config_file);
      return do_train(train_args, false, out);
    }
    if (*finetune_cmd) {
      if (!finetune_args.config_file.empty()) apply_config_file(finetune_cmd, finetune_args.config_file);
      return do_train(finetune_args, true, out);
    }
    if (*enhance) return do_enhance(enhance_args, out);
    if (*eval) return do_eval(eval_args, out);
    if (*bdrate) return do_bdrate(bd_args, out);
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> storage = args;
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  argv.push_back(nullptr);
  return run(static_cast<int>(storage.size()), argv.data(), out, err);
}

}  // namespace lgce::cli

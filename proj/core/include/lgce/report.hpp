#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lgce/image.hpp"

namespace lgce {

struct PlaneScore {
  double psnr_before = 0.0;  // degraded vs original
  double psnr_after = 0.0;   // enhanced vs original
  double delta = 0.0;        // after - before; 0 when both are infinite
};

struct FrameScore {
  std::size_t frame = 0;
  PlaneScore u;
  PlaneScore v;
};

/// Mean over finite entries; infinite entries are counted, not averaged.
struct ColumnMean {
  double mean = 0.0;
  std::size_t count = 0;
  std::size_t excluded_inf = 0;
};

ColumnMean finite_mean(std::span<const double> values);

struct EvalReport {
  std::string label;
  std::vector<FrameScore> frames;

  ColumnMean mean_u_before() const;
  ColumnMean mean_u_after() const;
  ColumnMean mean_u_delta() const;
  ColumnMean mean_v_before() const;
  ColumnMean mean_v_after() const;
  ColumnMean mean_v_delta() const;
};

PlaneScore score_plane(const Plane& degraded, const Plane& enhanced, const Plane& original);

EvalReport evaluate_frames(std::span<const YuvImage> degraded, std::span<const YuvImage> enhanced,
                           std::span<const YuvImage> original, std::string label = "sequence");

/// Reads three aligned I420 files; DataError if their frame counts differ.
EvalReport evaluate_files(const std::filesystem::path& degraded, const std::filesystem::path& enhanced,
                          const std::filesystem::path& original, std::size_t width, std::size_t height);

/// "inf" for +infinity, otherwise fixed with `precision` decimals.
std::string format_db(double value, int precision = 4);

/// Aligned per-frame table with an Average row and a note on excluded
/// infinite entries.
std::string format_table(const EvalReport& report);
std::string format_csv(const EvalReport& report);

/// One row per report (dataset), U and V delta-PSNR columns, then Average.
std::string format_delta_summary(std::span<const EvalReport> reports);

}  // namespace lgce

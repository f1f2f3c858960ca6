#include "lgce/report.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "lgce/errors.hpp"
#include "lgce/metrics.hpp"
#include "lgce/yuv_io.hpp"

namespace lgce {

namespace {

ColumnMean column(const std::vector<FrameScore>& frames, const std::function<double(const FrameScore&)>& pick) {
  std::vector<double> values;
  values.reserve(frames.size());
  for (const auto& f : frames) values.push_back(pick(f));
  return finite_mean(values);
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string mean_cell(const ColumnMean& m) {
  if (m.count == 0) return m.excluded_inf > 0 ? "inf" : "-";
  return format_db(m.mean);
}

}  // namespace

ColumnMean finite_mean(std::span<const double> values) {
  ColumnMean out;
  double sum = 0.0;
  for (double v : values) {
    if (std::isinf(v)) {
      ++out.excluded_inf;
      continue;
    }
    sum += v;
    ++out.count;
  }
  out.mean = out.count ? sum / static_cast<double>(out.count) : 0.0;
  return out;
}

ColumnMean EvalReport::mean_u_before() const { return column(frames, [](const FrameScore& f) { return f.u.psnr_before; }); }
ColumnMean EvalReport::mean_u_after() const { return column(frames, [](const FrameScore& f) { return f.u.psnr_after; }); }
ColumnMean EvalReport::mean_u_delta() const { return column(frames, [](const FrameScore& f) { return f.u.delta; }); }
ColumnMean EvalReport::mean_v_before() const { return column(frames, [](const FrameScore& f) { return f.v.psnr_before; }); }
ColumnMean EvalReport::mean_v_after() const { return column(frames, [](const FrameScore& f) { return f.v.psnr_after; }); }
ColumnMean EvalReport::mean_v_delta() const { return column(frames, [](const FrameScore& f) { return f.v.delta; }); }

PlaneScore score_plane(const Plane& degraded, const Plane& enhanced, const Plane& original) {
  PlaneScore s;
  s.psnr_before = psnr(degraded, original);
  s.psnr_after = psnr(enhanced, original);
  s.delta = (std::isinf(s.psnr_before) && std::isinf(s.psnr_after)) ? 0.0 : s.psnr_after - s.psnr_before;
  return s;
}

EvalReport evaluate_frames(std::span<const YuvImage> degraded, std::span<const YuvImage> enhanced,
                           std::span<const YuvImage> original, std::string label) {
  if (degraded.size() != enhanced.size() || degraded.size() != original.size()) {
    throw DataError("frame counts differ: degraded " + std::to_string(degraded.size()) + ", enhanced " +
                    std::to_string(enhanced.size()) + ", original " + std::to_string(original.size()));
  }
  EvalReport report;
  report.label = std::move(label);
  for (std::size_t i = 0; i < degraded.size(); ++i) {
    report.frames.push_back({i, score_plane(degraded[i].u, enhanced[i].u, original[i].u),
                             score_plane(degraded[i].v, enhanced[i].v, original[i].v)});
  }
  return report;
}

EvalReport evaluate_files(const std::filesystem::path& degraded, const std::filesystem::path& enhanced,
                          const std::filesystem::path& original, std::size_t width, std::size_t height) {
  const auto d = read_all_yuv420(degraded, width, height);
  const auto e = read_all_yuv420(enhanced, width, height);
  const auto o = read_all_yuv420(original, width, height);
  return evaluate_frames(d, e, o, enhanced.filename().string());
}

std::string format_db(double value, int precision) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  return buf;
}

std::string format_table(const EvalReport& report) {
  constexpr std::size_t w = 10;
  std::ostringstream out;
  out << pad("frame", 8) << pad("U before", w) << pad("U after", w) << pad("U dPSNR", w) << pad("V before", w)
      << pad("V after", w) << pad("V dPSNR", w) << '\n';
  for (const auto& f : report.frames) {
    out << pad(std::to_string(f.frame), 8) << pad(format_db(f.u.psnr_before), w) << pad(format_db(f.u.psnr_after), w)
        << pad(format_db(f.u.delta), w) << pad(format_db(f.v.psnr_before), w) << pad(format_db(f.v.psnr_after), w)
        << pad(format_db(f.v.delta), w) << '\n';
  }
  const ColumnMean cols[] = {report.mean_u_before(), report.mean_u_after(), report.mean_u_delta(),
                             report.mean_v_before(), report.mean_v_after(), report.mean_v_delta()};
  out << pad("Average", 8);
  std::size_t excluded = 0;
  for (const auto& c : cols) {
    out << pad(mean_cell(c), w);
    excluded += c.excluded_inf;
  }
  out << '\n';
  if (excluded > 0) out << "note: " << excluded << " infinite entries excluded from averages\n";
  return out.str();
}

std::string format_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "frame,u_psnr_before,u_psnr_after,u_delta_psnr,v_psnr_before,v_psnr_after,v_delta_psnr\n";
  for (const auto& f : report.frames) {
    out << f.frame << ',' << format_db(f.u.psnr_before) << ',' << format_db(f.u.psnr_after) << ','
        << format_db(f.u.delta) << ',' << format_db(f.v.psnr_before) << ',' << format_db(f.v.psnr_after) << ','
        << format_db(f.v.delta) << '\n';
  }
  out << "average";
  for (const auto& c : {report.mean_u_before(), report.mean_u_after(), report.mean_u_delta(), report.mean_v_before(),
                        report.mean_v_after(), report.mean_v_delta()}) {
    out << ',' << mean_cell(c);
  }
  out << '\n';
  return out.str();
}

std::string format_delta_summary(std::span<const EvalReport> reports) {
  constexpr std::size_t w = 10;
  std::size_t label_width = 8;
  for (const auto& r : reports) label_width = std::max(label_width, r.label.size() + 1);
  std::ostringstream out;
  out << std::string(label_width, ' ') << pad("U", w) << pad("V", w) << '\n';
  std::vector<double> us, vs;
  for (const auto& r : reports) {
    const ColumnMean u = r.mean_u_delta();
    const ColumnMean v = r.mean_v_delta();
    out << r.label << std::string(label_width - r.label.size(), ' ') << pad(mean_cell(u), w) << pad(mean_cell(v), w)
        << '\n';
    if (u.count) us.push_back(u.mean);
    if (v.count) vs.push_back(v.mean);
  }
  out << "Average" << std::string(label_width - 7, ' ') << pad(mean_cell(finite_mean(us)), w)
      << pad(mean_cell(finite_mean(vs)), w) << '\n';
  return out.str();
}

}  // namespace lgce

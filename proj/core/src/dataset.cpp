#include "lgce/dataset.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "lgce/errors.hpp"
#include "lgce/yuv_io.hpp"

namespace lgce {

namespace {

std::map<std::string, std::filesystem::path> yuv_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw DataError("not a directory: " + dir.string());
  std::map<std::string, std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".yuv") {
      files.emplace(entry.path().filename().string(), entry.path());
    }
  }
  return files;
}

void append_normalized(std::vector<float>& out, const std::vector<std::uint8_t>& samples) {
  for (std::uint8_t s : samples) out.push_back(static_cast<float>(s) / 255.0f);
}

}  // namespace

Dataset dataset_from_frames(std::span<const YuvImage> degraded, std::span<const YuvImage> original,
                            ChromaPlane plane) {
  if (degraded.size() != original.size()) throw DataError("degraded and original frame counts differ");
  Dataset dataset;
  for (std::size_t i = 0; i < degraded.size(); ++i) {
    for (auto& pair : extract_patches(degraded[i], original[i], plane)) dataset.pairs.push_back(std::move(pair));
  }
  return dataset;
}

Dataset build_dataset(const std::filesystem::path& degraded_dir, const std::filesystem::path& original_dir,
                      std::size_t width, std::size_t height) {
  const auto degraded = yuv_files(degraded_dir);
  const auto original = yuv_files(original_dir);
  for (const auto& [name, path] : degraded) {
    if (!original.contains(name)) throw DataError("no original for degraded file " + path.string());
  }
  for (const auto& [name, path] : original) {
    if (!degraded.contains(name)) throw DataError("no degraded counterpart for original file " + path.string());
  }
  if (degraded.empty()) throw DataError("no .yuv files in " + degraded_dir.string());

  Dataset dataset;
  for (const auto& [name, degraded_path] : degraded) {
    const auto degraded_frames = read_all_yuv420(degraded_path, width, height);
    const auto original_frames = read_all_yuv420(original.at(name), width, height);
    if (degraded_frames.size() != original_frames.size()) {
      throw DataError(name + ": degraded has " + std::to_string(degraded_frames.size()) + " frames, original has " +
                      std::to_string(original_frames.size()));
    }
    Dataset part = dataset_from_frames(degraded_frames, original_frames, ChromaPlane::U);
    for (auto& pair : part.pairs) dataset.pairs.push_back(std::move(pair));
  }
  if (dataset.pairs.empty()) {
    throw DataError("dataset is empty: frames of " + std::to_string(width) + "x" + std::to_string(height) +
                    " yield no full " + std::to_string(kChromaPatch) + "x" + std::to_string(kChromaPatch) +
                    " chroma tiles");
  }
  return dataset;
}

Batch make_batch(const Dataset& dataset, std::span<const std::size_t> indices) {
  if (indices.empty()) throw DataError("make_batch: empty batch");
  std::vector<float> chroma, luma, target;
  chroma.reserve(indices.size() * kChromaPatch * kChromaPatch);
  target.reserve(indices.size() * kChromaPatch * kChromaPatch);
  luma.reserve(indices.size() * kLumaPatch * kLumaPatch);
  for (std::size_t index : indices) {
    const PatchPair& pair = dataset.pairs.at(index);
    append_normalized(chroma, pair.degraded_chroma);
    append_normalized(target, pair.original_chroma);
    append_normalized(luma, pair.degraded_luma);
  }
  const std::size_t n = indices.size();
  return Batch{Tensor::from_data({n, 1, kChromaPatch, kChromaPatch}, std::move(chroma)),
               Tensor::from_data({n, 1, kLumaPatch, kLumaPatch}, std::move(luma)),
               Tensor::from_data({n, 1, kChromaPatch, kChromaPatch}, std::move(target))};
}

BatchSampler::BatchSampler(std::size_t dataset_size, std::size_t batch_size, std::uint64_t seed)
    : dataset_size_(dataset_size), batch_size_(batch_size), rng_(seed) {
  if (batch_size == 0) throw DataError("batch size must be positive");
  if (dataset_size < batch_size) {
    throw DataError("dataset of " + std::to_string(dataset_size) + " pairs cannot fill one batch of " +
                    std::to_string(batch_size));
  }
}

std::vector<std::vector<std::size_t>> BatchSampler::next_epoch() {
  std::vector<std::size_t> order(dataset_size_);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng_.shuffle(std::span<std::size_t>(order));
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t start = 0; start + batch_size_ <= order.size(); start += batch_size_) {
    batches.emplace_back(order.begin() + static_cast<long>(start),
                         order.begin() + static_cast<long>(start + batch_size_));
  }
  return batches;
}

}  // namespace lgce

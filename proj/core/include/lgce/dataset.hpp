#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "lgce/patches.hpp"
#include "lgce/rng.hpp"
#include "lgce/tensor.hpp"

namespace lgce {

/// U-plane training pairs gathered from paired degraded/original sequences.
struct Dataset {
  std::vector<PatchPair> pairs;

  std::size_t size() const { return pairs.size(); }
};

/// Pairs every `*.yuv` file in `degraded_dir` with the same filename in
/// `original_dir`, reads all frames and tiles their U planes. Throws
/// DataError for unpaired files, frame-count mismatches or an empty result.
Dataset build_dataset(const std::filesystem::path& degraded_dir, const std::filesystem::path& original_dir,
                      std::size_t width, std::size_t height);

Dataset dataset_from_frames(std::span<const YuvImage> degraded, std::span<const YuvImage> original,
                            ChromaPlane plane = ChromaPlane::U);

/// Network inputs for a list of samples, scaled to [0, 1].
struct Batch {
  Tensor chroma;  // N x 1 x 32 x 32
  Tensor luma;    // N x 1 x 64 x 64
  Tensor target;  // N x 1 x 32 x 32
};

Batch make_batch(const Dataset& dataset, std::span<const std::size_t> indices);

/// Seeded per-epoch permutation cut into full batches (the trailing partial
/// batch is dropped).
class BatchSampler {
 public:
  BatchSampler(std::size_t dataset_size, std::size_t batch_size, std::uint64_t seed);

  std::vector<std::vector<std::size_t>> next_epoch();
  std::size_t batches_per_epoch() const { return dataset_size_ / batch_size_; }

 private:
  std::size_t dataset_size_;
  std::size_t batch_size_;
  Rng rng_;
};

}  // namespace lgce

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "lgce/network.hpp"

namespace lgce {

inline constexpr char kCheckpointMagic[4] = {'C', 'B', 'W', '1'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

// Layout, all integers little-endian u32:
//   "CBW1" | version | { name_len | name (UTF-8) | rank | extents[rank] | f32 LE data }*
std::vector<std::uint8_t> serialize_tensors(const std::vector<NamedTensor>& tensors);
std::vector<NamedTensor> deserialize_tensors(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> serialize_model(const ModelParams& params);
void save_checkpoint(const std::filesystem::path& path, const ModelParams& params);
std::vector<NamedTensor> read_checkpoint(const std::filesystem::path& path);

/// Copies checkpoint values into existing parameters. Every parameter must
/// appear with an identical shape and no unknown names are allowed
/// (ShapeError otherwise).
void load_into(ModelParams& params, const std::vector<NamedTensor>& tensors);

/// Builds a model whose feature width is taken from the checkpoint; the
/// remaining settings come from `config`.
ModelParams load_model(const std::filesystem::path& path, NetworkConfig config = {});
ModelParams model_from_tensors(const std::vector<NamedTensor>& tensors, NetworkConfig config = {});

}  // namespace lgce

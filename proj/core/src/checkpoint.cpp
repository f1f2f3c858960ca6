#include "lgce/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <unordered_map>

#include "lgce/errors.hpp"

namespace lgce {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  bool done() const { return pos_ == bytes_.size(); }

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }

  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw DataError("checkpoint truncated at byte " + std::to_string(pos_));
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize_tensors(const std::vector<NamedTensor>& tensors) {
  std::vector<std::uint8_t> out(std::begin(kCheckpointMagic), std::end(kCheckpointMagic));
  put_u32(out, kCheckpointVersion);
  for (const auto& [name, tensor] : tensors) {
    put_u32(out, static_cast<std::uint32_t>(name.size()));
    out.insert(out.end(), name.begin(), name.end());
    put_u32(out, static_cast<std::uint32_t>(tensor.rank()));
    for (std::size_t extent : tensor.shape()) put_u32(out, static_cast<std::uint32_t>(extent));
    for (float value : tensor.data()) put_u32(out, std::bit_cast<std::uint32_t>(value));
  }
  return out;
}

std::vector<NamedTensor> deserialize_tensors(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  const auto magic = in.take(4);
  if (std::memcmp(magic.data(), kCheckpointMagic, 4) != 0) throw DataError("not a checkpoint (bad magic)");
  const std::uint32_t version = in.u32();
  if (version != kCheckpointVersion) {
    throw DataError("unsupported checkpoint version " + std::to_string(version));
  }
  std::vector<NamedTensor> tensors;
  while (!in.done()) {
    const std::uint32_t name_len = in.u32();
    const auto name_bytes = in.take(name_len);
    std::string name(name_bytes.begin(), name_bytes.end());
    const std::uint32_t rank = in.u32();
    if (rank == 0 || rank > 8) throw DataError("checkpoint record '" + name + "' has invalid rank");
    Shape shape;
    for (std::uint32_t i = 0; i < rank; ++i) shape.push_back(in.u32());
    std::vector<float> values(shape_numel(shape));
    for (auto& v : values) v = std::bit_cast<float>(in.u32());
    check_finite(values, "checkpoint record '" + name + "'");
    tensors.push_back({std::move(name), Tensor::from_data(std::move(shape), std::move(values))});
  }
  return tensors;
}

std::vector<std::uint8_t> serialize_model(const ModelParams& params) {
  return serialize_tensors(named_parameters(params));
}

void save_checkpoint(const std::filesystem::path& path, const ModelParams& params) {
  const auto bytes = serialize_model(params);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("failed writing " + path.string());
}

std::vector<NamedTensor> read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_tensors(bytes);
}

void load_into(ModelParams& params, const std::vector<NamedTensor>& tensors) {
  std::unordered_map<std::string, const Tensor*> by_name;
  for (const auto& t : tensors) {
    if (!by_name.emplace(t.name, &t.tensor).second) throw DataError("duplicate checkpoint record '" + t.name + "'");
  }
  auto targets = named_parameters(params);
  if (targets.size() != by_name.size()) {
    for (const auto& t : tensors) {
      bool known = false;
      for (const auto& target : targets) known = known || target.name == t.name;
      if (!known) throw ShapeError("checkpoint has unknown parameter '" + t.name + "'");
    }
  }
  for (auto& [name, tensor] : targets) {
    auto it = by_name.find(name);
    if (it == by_name.end()) throw ShapeError("checkpoint is missing parameter '" + name + "'");
    if (it->second->shape() != tensor.shape()) {
      throw ShapeError("checkpoint parameter '" + name + "' has shape " + shape_to_string(it->second->shape()) +
                       ", model expects " + shape_to_string(tensor.shape()));
    }
    auto src = it->second->data();
    std::copy(src.begin(), src.end(), tensor.mutable_data().begin());
  }
}

ModelParams model_from_tensors(const std::vector<NamedTensor>& tensors, NetworkConfig config) {
  for (const auto& t : tensors) {
    if (t.name == "grab.conv_in.weight") {
      config.feature_width = t.tensor.dim(0);
      ModelParams params = zero_model(config);
      load_into(params, tensors);
      return params;
    }
  }
  throw ShapeError("checkpoint has no 'grab.conv_in.weight' record");
}

ModelParams load_model(const std::filesystem::path& path, NetworkConfig config) {
  return model_from_tensors(read_checkpoint(path), config);
}

}  // namespace lgce

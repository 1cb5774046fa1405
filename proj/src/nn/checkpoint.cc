// Copyright 2026 The Tabletop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tabletop/nn/checkpoint.h"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace tabletop::nn {
namespace {

constexpr char kMagic[] = "TABLETOP-CKPT";

std::uint32_t ToLittle(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    v = ((v & 0xff) << 24) | ((v & 0xff00) << 8) | ((v >> 8) & 0xff00) | (v >> 24);
  }
  return v;
}

}  // namespace

nlohmann::json NetShapeToJson(const NetShape& shape) {
  return {{"observation_shape", shape.observation_shape},
          {"actions", shape.actions},
          {"hidden", shape.hidden},
          {"conv_channels", shape.conv_channels}};
}

NetShape NetShapeFromJson(const nlohmann::json& j) {
  NetShape shape;
  shape.observation_shape = j.at("observation_shape").get<std::vector<int>>();
  shape.actions = j.at("actions").get<int>();
  shape.hidden = j.at("hidden").get<int>();
  shape.conv_channels = j.at("conv_channels").get<int>();
  return shape;
}

void SaveCheckpoint(const std::string& path, const PolicyNet<float>& net,
                    const nlohmann::json& meta) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  nlohmann::json header = {{"shape", NetShapeToJson(net.shape())},
                           {"parameter_count", net.parameter_count()},
                           {"dtype", "float32-le"},
                           {"meta", meta}};
  // Write to a sibling file and rename so readers never see a partial file.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
    out << kMagic << ' ' << kCheckpointVersion << '\n' << header.dump() << '\n';
    const auto& params = net.parameters();
    for (Eigen::Index i = 0; i < params.size(); ++i) {
      const std::uint32_t bits = ToLittle(std::bit_cast<std::uint32_t>(params[i]));
      out.write(reinterpret_cast<const char*>(&bits), sizeof(bits));
    }
    if (!out) throw std::runtime_error("short write on checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path);
  std::string magic_line;
  std::getline(in, magic_line);
  const std::string expected = std::string(kMagic) + ' ' + std::to_string(kCheckpointVersion);
  if (magic_line != expected) {
    throw std::runtime_error(path + " is not a version " + std::to_string(kCheckpointVersion) +
                             " checkpoint (first line '" + magic_line + "')");
  }
  std::string header_line;
  std::getline(in, header_line);
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_line);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": bad checkpoint header: " + e.what());
  }
  if (header.value("dtype", "") != "float32-le") {
    throw std::runtime_error(path + ": unsupported dtype " + header.value("dtype", "?"));
  }
  PolicyNet<float> net(NetShapeFromJson(header.at("shape")));
  const auto count = header.at("parameter_count").get<Eigen::Index>();
  if (count != net.parameter_count()) {
    throw std::runtime_error(path + ": header declares " + std::to_string(count) +
                             " parameters but the shape needs " +
                             std::to_string(net.parameter_count()));
  }
  auto& params = net.parameters();
  for (Eigen::Index i = 0; i < count; ++i) {
    std::uint32_t bits = 0;
    if (!in.read(reinterpret_cast<char*>(&bits), sizeof(bits))) {
      throw std::runtime_error(path + ": truncated at parameter " + std::to_string(i));
    }
    params[i] = std::bit_cast<float>(ToLittle(bits));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw std::runtime_error(path + ": trailing bytes after parameters");
  }
  return {header.value("meta", nlohmann::json::object()), std::move(net)};
}

}  // namespace tabletop::nn

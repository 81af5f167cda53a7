// Copyright 2026 The Lukthung Classifier Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lukthung/nn/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

namespace lukthung::nn {
namespace {

void PutU16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t GetU32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 |
         static_cast<std::uint32_t>(p[3]) << 24;
}

bool IsReservedKey(const std::string& key) { return key.rfind("tensor.", 0) == 0; }

Shape ParseShape(const std::string& text) {
  Shape shape;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find('x', pos);
    const std::string part =
        text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
      throw CorruptInputError("malformed tensor shape '" + text + "'");
    }
    shape.push_back(std::stoull(part));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return shape;
}

std::string FormatShape(const Shape& shape) {
  std::string s;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(shape[i]);
  }
  return s;
}

}  // namespace

void ModelCheckpoint::SetMeta(const std::string& key, const std::string& value) {
  if (key.empty() || key.find_first_of("=\n") != std::string::npos) {
    throw ValidationError("invalid checkpoint metadata key '" + key + "'");
  }
  if (value.find('\n') != std::string::npos) {
    throw ValidationError("checkpoint metadata value for '" + key +
                          "' contains a newline");
  }
  if (IsReservedKey(key)) {
    throw ValidationError("checkpoint metadata key '" + key + "' is reserved");
  }
  meta_[key] = value;
}

const std::string& ModelCheckpoint::Meta(const std::string& key) const {
  auto it = meta_.find(key);
  if (it == meta_.end()) {
    throw ValidationError("checkpoint is missing metadata key '" + key + "'");
  }
  return it->second;
}

void ModelCheckpoint::AddTensor(std::string name, Tensor value) {
  if (name.empty() || name.find_first_of(" \n=") != std::string::npos) {
    throw ValidationError("invalid tensor name '" + name + "'");
  }
  if (HasTensor(name)) {
    throw ValidationError("duplicate tensor name '" + name + "'");
  }
  tensors_.push_back({std::move(name), std::move(value)});
}

bool ModelCheckpoint::HasTensor(const std::string& name) const {
  for (const auto& t : tensors_) {
    if (t.name == name) return true;
  }
  return false;
}

const Tensor& ModelCheckpoint::TensorNamed(const std::string& name) const {
  for (const auto& t : tensors_) {
    if (t.name == name) return t.value;
  }
  throw ValidationError("checkpoint has no tensor named '" + name + "'");
}

const Tensor& ModelCheckpoint::TensorChecked(const std::string& name,
                                             const Shape& expected) const {
  const Tensor& t = TensorNamed(name);
  ExpectShape(t, expected, "checkpoint tensor '" + name + "'");
  return t;
}

std::vector<std::uint8_t> ModelCheckpoint::Serialize() const {
  std::string meta;
  for (const auto& [k, v] : meta_) meta += k + "=" + v + "\n";
  meta += "tensor.count=" + std::to_string(tensors_.size()) + "\n";
  for (std::size_t i = 0; i < tensors_.size(); ++i) {
    meta += "tensor." + std::to_string(i) + "=" + tensors_[i].name + " " +
            FormatShape(tensors_[i].value.shape()) + "\n";
  }

  std::vector<std::uint8_t> out;
  out.insert(out.end(), magic_.begin(), magic_.end());
  PutU16(out, kCheckpointVersion);
  PutU32(out, static_cast<std::uint32_t>(meta.size()));
  out.insert(out.end(), meta.begin(), meta.end());
  for (const auto& t : tensors_) {
    for (float f : t.value.values()) PutU32(out, std::bit_cast<std::uint32_t>(f));
  }
  return out;
}

ModelCheckpoint ModelCheckpoint::Deserialize(std::span<const std::uint8_t> bytes,
                                             std::string_view expected_magic) {
  if (bytes.size() < 10) {
    throw CorruptInputError("checkpoint truncated: " + std::to_string(bytes.size()) +
                            " bytes");
  }
  const std::string magic(reinterpret_cast<const char*>(bytes.data()), 4);
  if (magic != expected_magic) {
    throw UnsupportedFormatError("expected magic '" + std::string(expected_magic) +
                                 "', found '" + magic + "'");
  }
  const std::uint16_t version =
      static_cast<std::uint16_t>(bytes[4] | (bytes[5] << 8));
  if (version != kCheckpointVersion) {
    throw UnsupportedFormatError("unsupported container version " +
                                 std::to_string(version));
  }
  const std::uint32_t meta_len = GetU32(bytes.data() + 6);
  if (bytes.size() < 10 + static_cast<std::size_t>(meta_len)) {
    throw CorruptInputError("checkpoint metadata truncated");
  }
  ModelCheckpoint ckpt(magic);
  std::map<std::string, std::string> reserved;
  std::istringstream lines(
      std::string(reinterpret_cast<const char*>(bytes.data() + 10), meta_len));
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw CorruptInputError("malformed metadata line '" + line + "'");
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    if (IsReservedKey(key)) {
      reserved[key] = value;
    } else {
      ckpt.meta_[key] = value;
    }
  }
  auto count_it = reserved.find("tensor.count");
  if (count_it == reserved.end()) {
    throw CorruptInputError("checkpoint metadata lacks tensor.count");
  }
  const std::size_t count = std::stoull(count_it->second);
  std::size_t offset = 10 + meta_len;
  for (std::size_t i = 0; i < count; ++i) {
    auto it = reserved.find("tensor." + std::to_string(i));
    if (it == reserved.end()) {
      throw CorruptInputError("checkpoint metadata lacks tensor." + std::to_string(i));
    }
    const auto space = it->second.rfind(' ');
    if (space == std::string::npos) {
      throw CorruptInputError("malformed tensor entry '" + it->second + "'");
    }
    Shape shape = ParseShape(it->second.substr(space + 1));
    const std::size_t n = NumElements(shape);
    if (bytes.size() < offset + 4 * n) {
      throw CorruptInputError("checkpoint payload truncated in tensor '" +
                              it->second.substr(0, space) + "'");
    }
    std::vector<float> values(n);
    for (std::size_t k = 0; k < n; ++k) {
      values[k] = std::bit_cast<float>(GetU32(bytes.data() + offset + 4 * k));
    }
    offset += 4 * n;
    ckpt.tensors_.push_back(
        {it->second.substr(0, space), Tensor(std::move(shape), std::move(values))});
  }
  if (offset != bytes.size()) {
    throw CorruptInputError("checkpoint has " + std::to_string(bytes.size() - offset) +
                            " trailing bytes");
  }
  return ckpt;
}

void ModelCheckpoint::Save(const std::filesystem::path& path) const {
  WriteFileBytes(path, Serialize());
}

ModelCheckpoint ModelCheckpoint::Load(const std::filesystem::path& path,
                                      std::string_view expected_magic) {
  const auto bytes = ReadFileBytes(path);
  return Deserialize(bytes, expected_magic);
}

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  in.seekg(0, std::ios::end);
  const auto size = static_cast<std::size_t>(in.tellg());
  in.seekg(0);
  std::vector<std::uint8_t> bytes(size);
  if (size > 0 && !in.read(reinterpret_cast<char*>(bytes.data()),
                           static_cast<std::streamsize>(size))) {
    throw IoError("failed reading " + path.string());
  }
  return bytes;
}

void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> bytes) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  // Write-then-rename so concurrent readers never see a partial file.
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(
                     std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace lukthung::nn

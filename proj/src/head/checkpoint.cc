// Copyright 2026 The adcue Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adcue/head/checkpoint.h"

#include "adcue/error.h"
#include "adcue/store/binary_io.h"

namespace adcue::head {
namespace {

constexpr char kMagic[4] = {'A', 'D', 'H', 'P'};
constexpr uint16_t kVersion = 1;

struct Record {
  std::vector<uint64_t> dims;
  std::vector<float> values;
};

void PutRecord(store::ByteWriter& w, const std::string& name,
               const std::vector<uint64_t>& dims, std::span<const float> values) {
  w.U16(static_cast<uint16_t>(name.size()));
  w.Raw(name);
  w.U8(static_cast<uint8_t>(dims.size()));
  for (uint64_t d : dims) w.U64(d);
  w.F32(values);
}

// meta.head layout:
//   [aggregation, ms_layer, layers, hidden_in, pooling, attn_dim,
//    dropout_rate, n_proj, proj_dims...]
std::vector<float> EncodeConfig(const HeadConfig& c) {
  std::vector<float> v = {
      static_cast<float>(c.aggregation == Aggregation::kWeightedSum ? 0 : 1),
      static_cast<float>(c.ms_layer),
      static_cast<float>(c.layers),
      static_cast<float>(c.hidden_in),
      static_cast<float>(c.pooling == Pooling::kAttentive ? 0 : 1),
      static_cast<float>(c.attn_dim),
      static_cast<float>(c.dropout_rate),
      static_cast<float>(c.proj_dims.size())};
  for (size_t d : c.proj_dims) v.push_back(static_cast<float>(d));
  return v;
}

HeadConfig DecodeConfig(const std::vector<float>& v, const std::string& origin) {
  if (v.size() < 8 || v.size() != 8 + static_cast<size_t>(v[7])) {
    throw DataError(origin + ": malformed meta.head record");
  }
  HeadConfig c;
  c.aggregation = v[0] == 0 ? Aggregation::kWeightedSum : Aggregation::kMaxSingle;
  c.ms_layer = static_cast<size_t>(v[1]);
  c.layers = static_cast<size_t>(v[2]);
  c.hidden_in = static_cast<size_t>(v[3]);
  c.pooling = v[4] == 0 ? Pooling::kAttentive : Pooling::kMean;
  c.attn_dim = static_cast<size_t>(v[5]);
  c.dropout_rate = v[6];
  c.proj_dims.clear();
  for (size_t i = 0; i < static_cast<size_t>(v[7]); ++i) {
    c.proj_dims.push_back(static_cast<size_t>(v[8 + i]));
  }
  return c;
}

}  // namespace

std::vector<char> EncodeCheckpoint(const Checkpoint& c) {
  c.params.CheckShapes(c.config);
  store::ByteWriter w;
  w.Raw(std::string_view(kMagic, 4));
  w.U16(kVersion);
  const auto meta = EncodeConfig(c.config);
  PutRecord(w, "meta.head", {meta.size()}, meta);
  for (const auto& [key, value] : c.attributes) {
    const float f = static_cast<float>(value);
    PutRecord(w, "attr." + key, {1}, std::span<const float>(&f, 1));
  }
  for (const nn::Param* p : c.params.All()) {
    std::vector<float> values(p->value.values().begin(), p->value.values().end());
    PutRecord(w, p->name, {p->value.rows(), p->value.cols()}, values);
  }
  return w.bytes();
}

Checkpoint DecodeCheckpoint(std::span<const char> bytes, const std::string& origin) {
  store::ByteReader r(bytes);
  std::string magic;
  uint16_t version = 0;
  if (!r.Raw(4, &magic) || magic != std::string_view(kMagic, 4)) {
    throw DataError(origin + ": bad magic");
  }
  if (!r.U16(&version) || version != kVersion) {
    throw DataError(origin + ": version mismatch");
  }
  std::map<std::string, Record> records;
  while (r.remaining() > 0) {
    uint16_t name_len = 0;
    uint8_t rank = 0;
    std::string name;
    Record rec;
    if (!r.U16(&name_len) || !r.Raw(name_len, &name) || !r.U8(&rank)) {
      throw DataError(origin + ": truncated record header");
    }
    uint64_t count = 1;
    for (uint8_t i = 0; i < rank; ++i) {
      uint64_t d = 0;
      if (!r.U64(&d)) throw DataError(origin + ": truncated record dims");
      rec.dims.push_back(d);
      count *= d;
    }
    if (!r.F32(count, &rec.values)) throw DataError(origin + ": truncated payload");
    records[name] = std::move(rec);
  }
  auto meta = records.find("meta.head");
  if (meta == records.end()) throw DataError(origin + ": missing meta.head record");
  Checkpoint c;
  c.config = DecodeConfig(meta->second.values, origin);
  c.config.Validate();
  nn::SeededRng rng(0);
  c.params = HeadParams::Init(c.config, rng);
  for (nn::Param* p : c.params.All()) {
    auto it = records.find(p->name);
    if (it == records.end()) throw DataError(origin + ": missing record '" + p->name + "'");
    const Record& rec = it->second;
    if (rec.dims.size() != 2 || rec.dims[0] != p->value.rows() ||
        rec.dims[1] != p->value.cols()) {
      throw DataError(origin + ": record '" + p->name + "' has the wrong shape");
    }
    for (size_t i = 0; i < rec.values.size(); ++i) p->value[i] = rec.values[i];
    if (!p->value.AllFinite()) {
      throw DataError(origin + ": non-finite values in '" + p->name + "'");
    }
  }
  for (const auto& [name, rec] : records) {
    if (name.rfind("attr.", 0) == 0 && rec.values.size() == 1) {
      c.attributes[name.substr(5)] = rec.values[0];
    }
  }
  return c;
}

void SaveCheckpoint(const Checkpoint& c, const std::string& path) {
  store::WriteFileBytes(path, EncodeCheckpoint(c));
}

Checkpoint LoadCheckpoint(const std::string& path) {
  return DecodeCheckpoint(store::ReadFileBytes(path), path);
}

}  // namespace adcue::head

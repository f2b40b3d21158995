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

#ifndef ADCUE_HEAD_CHECKPOINT_H_
#define ADCUE_HEAD_CHECKPOINT_H_

#include <map>
#include <string>
#include <vector>

#include "adcue/head/head.h"

namespace adcue::head {

// Binary checkpoint, little-endian:
//   "ADHP" | u16 version=1 | records until end of file, each
//   u16 name length | name | u8 rank | u64 dims[rank] | float32 payload.
//
// Besides one record per parameter (named after Param::name), the writer
// emits "meta.head" describing the HeadConfig and one "attr.<key>" scalar
// record per attribute, so a checkpoint is self-describing.
struct Checkpoint {
  HeadConfig config;
  HeadParams params;
  std::map<std::string, double> attributes;
};

std::vector<char> EncodeCheckpoint(const Checkpoint& c);
Checkpoint DecodeCheckpoint(std::span<const char> bytes, const std::string& origin);

void SaveCheckpoint(const Checkpoint& c, const std::string& path);
Checkpoint LoadCheckpoint(const std::string& path);

}  // namespace adcue::head

#endif  // ADCUE_HEAD_CHECKPOINT_H_

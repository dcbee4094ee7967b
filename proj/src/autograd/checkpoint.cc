// autograd/checkpoint.cc

// Copyright 2026  The vqvc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "autograd/checkpoint.h"

#include <fstream>

#include "base/file-util.h"

namespace vqvc {
namespace ag {

void WriteCheckpoint(const std::vector<NamedTensor> &tensors, std::ostream &os) {
  os.write("CRKP", 4);
  WriteU8(os, kCheckpointVersion);
  WriteU32(os, static_cast<uint32_t>(tensors.size()));
  for (const NamedTensor &t : tensors) {
    if (t.name.size() > 0xFFFF) throw Error("checkpoint: tensor name too long");
    if (t.shape.size() > 0xFF) throw Error("checkpoint: tensor rank too large");
    if (NumElements(t.shape) != static_cast<int64_t>(t.data.size()))
      throw Error("checkpoint: data size does not match shape for " + t.name);
    WriteU16(os, static_cast<uint16_t>(t.name.size()));
    os.write(t.name.data(), t.name.size());
    WriteU8(os, static_cast<uint8_t>(t.shape.size()));
    for (int d : t.shape) WriteU32(os, static_cast<uint32_t>(d));
    os.write(reinterpret_cast<const char *>(t.data.data()),
             t.data.size() * sizeof(float));
  }
}

void WriteCheckpoint(const std::vector<NamedTensor> &tensors,
                     const std::string &path) {
  AtomicWrite(path, [&](std::ostream &os) { WriteCheckpoint(tensors, os); });
}

std::vector<NamedTensor> ReadCheckpoint(std::istream &is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::string(magic, 4) != "CRKP")
    throw Error("checkpoint: bad magic");
  uint8_t version = ReadU8(is);
  if (version != kCheckpointVersion)
    throw Error(fmt::format("checkpoint: unsupported version {}", version));
  uint32_t count = ReadU32(is);
  std::vector<NamedTensor> tensors(count);
  for (NamedTensor &t : tensors) {
    uint16_t len = ReadU16(is);
    t.name.resize(len);
    is.read(t.name.data(), len);
    uint8_t rank = ReadU8(is);
    t.shape.resize(rank);
    for (int &d : t.shape) d = static_cast<int>(ReadU32(is));
    t.data.resize(NumElements(t.shape));
    is.read(reinterpret_cast<char *>(t.data.data()),
            t.data.size() * sizeof(float));
    if (!is) throw Error("checkpoint: truncated tensor " + t.name);
  }
  return tensors;
}

std::vector<NamedTensor> ReadCheckpoint(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  try {
    return ReadCheckpoint(is);
  } catch (const Error &e) {
    throw Error(path + ": " + e.what());
  }
}

const NamedTensor *FindTensor(const std::vector<NamedTensor> &tensors,
                              const std::string &name) {
  for (const NamedTensor &t : tensors)
    if (t.name == name) return &t;
  return nullptr;
}

}  // namespace ag
}  // namespace vqvc

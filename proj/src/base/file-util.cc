// base/file-util.cc

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

#include "base/file-util.h"

#include <unistd.h>

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>

#include "base/vqvc-common.h"

namespace vqvc {

void AtomicWrite(const std::string &path,
                 const std::function<void(std::ostream &)> &writer) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open " + tmp + " for writing");
    writer(os);
    os.flush();
    if (!os) throw Error("write failed for " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename " + tmp + " to " + path + ": " + ec.message());
  }
}

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

void WriteU8(std::ostream &os, uint8_t v) {
  os.write(reinterpret_cast<const char *>(&v), 1);
}
void WriteU16(std::ostream &os, uint16_t v) {
  os.write(reinterpret_cast<const char *>(&v), 2);
}
void WriteU32(std::ostream &os, uint32_t v) {
  os.write(reinterpret_cast<const char *>(&v), 4);
}
void WriteF32(std::ostream &os, float v) {
  os.write(reinterpret_cast<const char *>(&v), 4);
}

namespace {
template <typename T>
T ReadScalar(std::istream &is) {
  T v{};
  is.read(reinterpret_cast<char *>(&v), sizeof(T));
  if (!is) throw Error("unexpected end of stream");
  return v;
}
}  // namespace

uint8_t ReadU8(std::istream &is) { return ReadScalar<uint8_t>(is); }
uint16_t ReadU16(std::istream &is) { return ReadScalar<uint16_t>(is); }
uint32_t ReadU32(std::istream &is) { return ReadScalar<uint32_t>(is); }
float ReadF32(std::istream &is) { return ReadScalar<float>(is); }

}  // namespace vqvc

// base/file-util.h

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

#ifndef VQVC_BASE_FILE_UTIL_H_
#define VQVC_BASE_FILE_UTIL_H_

#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <string>

namespace vqvc {

// Writes through `path`.tmp.<pid> and renames over `path` once the writer
// returns and the stream is flushed, so readers never observe partial files.
void AtomicWrite(const std::string &path,
                 const std::function<void(std::ostream &)> &writer);

// Little-endian scalar helpers shared by the binary formats.
void WriteU8(std::ostream &os, uint8_t v);
void WriteU16(std::ostream &os, uint16_t v);
void WriteU32(std::ostream &os, uint32_t v);
void WriteF32(std::ostream &os, float v);
uint8_t ReadU8(std::istream &is);
uint16_t ReadU16(std::istream &is);
uint32_t ReadU32(std::istream &is);
float ReadF32(std::istream &is);

}  // namespace vqvc

#endif  // VQVC_BASE_FILE_UTIL_H_

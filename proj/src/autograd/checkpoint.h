// autograd/checkpoint.h

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

#ifndef VQVC_AUTOGRAD_CHECKPOINT_H_
#define VQVC_AUTOGRAD_CHECKPOINT_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "autograd/value.h"

namespace vqvc {
namespace ag {

// Checkpoint layout (little-endian):
//   "CRKP" | u8 version | u32 count |
//   count x { u16 name_len | name | u8 rank | rank x u32 dim | float32 data }
constexpr uint8_t kCheckpointVersion = 1;

struct NamedTensor {
  std::string name;
  Shape shape;
  std::vector<float> data;
};

void WriteCheckpoint(const std::vector<NamedTensor> &tensors, std::ostream &os);
void WriteCheckpoint(const std::vector<NamedTensor> &tensors,
                     const std::string &path);
std::vector<NamedTensor> ReadCheckpoint(std::istream &is);
std::vector<NamedTensor> ReadCheckpoint(const std::string &path);

const NamedTensor *FindTensor(const std::vector<NamedTensor> &tensors,
                              const std::string &name);

}  // namespace ag
}  // namespace vqvc

#endif  // VQVC_AUTOGRAD_CHECKPOINT_H_

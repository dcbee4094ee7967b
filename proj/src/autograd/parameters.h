// autograd/parameters.h

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

#ifndef VQVC_AUTOGRAD_PARAMETERS_H_
#define VQVC_AUTOGRAD_PARAMETERS_H_

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "autograd/checkpoint.h"
#include "autograd/value.h"

namespace vqvc {
namespace ag {

// Ordered, hierarchically named parameter collection ("enc/bottom/...").
class ParameterStore {
 public:
  Value Add(const std::string &name, const Shape &shape,
            std::vector<double> init);
  // Uniform in [-bound, bound].
  Value AddUniform(const std::string &name, const Shape &shape, double bound,
                   std::mt19937_64 *rng);
  Value AddZeros(const std::string &name, const Shape &shape);

  const Value &Get(const std::string &name) const;
  bool Contains(const std::string &name) const;
  const std::vector<std::pair<std::string, Value>> &entries() const {
    return entries_;
  }
  int64_t NumParameters() const;
  void ZeroGrad() const;

  std::vector<NamedTensor> Export() const;
  // Copies every stored parameter from `tensors`; missing names or shape
  // mismatches are errors.  Tensors not in the store are ignored.
  void Import(const std::vector<NamedTensor> &tensors);

  // Order-sensitive hash of all parameter bit patterns.
  uint64_t Checksum() const;

 private:
  std::vector<std::pair<std::string, Value>> entries_;
};

}  // namespace ag
}  // namespace vqvc

#endif  // VQVC_AUTOGRAD_PARAMETERS_H_

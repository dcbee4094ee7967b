// autograd/adam.h

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

#ifndef VQVC_AUTOGRAD_ADAM_H_
#define VQVC_AUTOGRAD_ADAM_H_

#include <string>
#include <vector>

#include "autograd/parameters.h"

namespace vqvc {
namespace ag {

struct AdamOptions {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias correction over every parameter of a store.  The store must
// outlive the optimizer and keep its parameter list fixed.
class Adam {
 public:
  Adam(const ParameterStore &params, const AdamOptions &opts);

  // Throws, before touching any parameter, if a gradient is not finite.
  void Step();
  int64_t step() const { return step_; }
  const AdamOptions &options() const { return opts_; }

  // Moments are stored as "<prefix><param>/m" and "<prefix><param>/v", the
  // counter as "<prefix>step".
  std::vector<NamedTensor> ExportState(const std::string &prefix) const;
  void ImportState(const std::vector<NamedTensor> &tensors,
                   const std::string &prefix);

 private:
  const ParameterStore &params_;
  AdamOptions opts_;
  int64_t step_ = 0;
  std::vector<std::vector<double>> m_, v_;
};

}  // namespace ag
}  // namespace vqvc

#endif  // VQVC_AUTOGRAD_ADAM_H_

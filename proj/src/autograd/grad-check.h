// autograd/grad-check.h

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

#ifndef VQVC_AUTOGRAD_GRAD_CHECK_H_
#define VQVC_AUTOGRAD_GRAD_CHECK_H_

#include <functional>
#include <vector>

#include "autograd/value.h"

namespace vqvc {
namespace ag {

struct GradCheckOptions {
  double eps = 1e-6;
  // Hold stop-gradient outputs and quantizer assignments at their values
  // from the unperturbed pass.  The finite differences then measure the
  // surrogate whose gradient backward computes.  With this off, any
  // stop-gradient branch makes the two disagree.
  bool freeze_stop_gradients = true;
};

struct GradCheckReport {
  // Per input: ||analytic - numeric||_inf / max(||analytic||_inf,
  // ||numeric||_inf), or 0 when both vanish.
  std::vector<double> rel_err;
  std::vector<std::vector<double>> analytic;
  std::vector<std::vector<double>> numeric;
  double max_rel_err = 0.0;
};

// Central differences on every coordinate of every input versus one
// backward pass.  `fn` must return a scalar and be deterministic; inputs
// must require grad.
GradCheckReport GradCheckDetailed(const std::function<Value()> &fn,
                                  const std::vector<Value> &inputs,
                                  const GradCheckOptions &opts = {});

double GradCheck(const std::function<Value()> &fn,
                 const std::vector<Value> &inputs,
                 const GradCheckOptions &opts = {});

// Relative error as used above.
double RelativeError(const std::vector<double> &a, const std::vector<double> &b);

}  // namespace ag
}  // namespace vqvc

#endif  // VQVC_AUTOGRAD_GRAD_CHECK_H_

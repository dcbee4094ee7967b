// autograd/grad-check.cc

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

#include "autograd/grad-check.h"

#include <cmath>
#include <optional>

namespace vqvc {
namespace ag {

double RelativeError(const std::vector<double> &a, const std::vector<double> &b) {
  if (a.size() != b.size()) throw Error("relative error: size mismatch");
  double diff = 0.0, scale = 0.0;
  for (size_t i = 0; i < a.size(); i++) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
  }
  if (scale == 0.0) return 0.0;
  return diff / scale;
}

GradCheckReport GradCheckDetailed(const std::function<Value()> &fn,
                                  const std::vector<Value> &inputs,
                                  const GradCheckOptions &opts) {
  for (const Value &v : inputs)
    if (!v.requires_grad())
      throw Error("grad check: every input must require grad");

  GradCheckReport report;
  FrozenConstants frozen(FrozenConstants::Mode::kRecord);
  {
    std::optional<FreezeScope> freeze;
    if (opts.freeze_stop_gradients) freeze.emplace(&frozen);
    for (const Value &v : inputs) v.ZeroGrad();
    Tape tape;
    TapeScope scope(&tape);
    Value loss = fn();
    tape.Backward(loss);
  }
  for (const Value &v : inputs) report.analytic.push_back(v.grad());
  frozen.StartReplay();

  auto evaluate = [&]() {
    NoGradScope no_grad;
    std::optional<FreezeScope> freeze;
    if (opts.freeze_stop_gradients) {
      frozen.Rewind();
      freeze.emplace(&frozen);
    }
    return fn().item();
  };

  for (size_t k = 0; k < inputs.size(); k++) {
    Value v = inputs[k];
    std::vector<double> numeric(v.numel());
    for (int64_t i = 0; i < v.numel(); i++) {
      double saved = v.data()[i];
      v.data()[i] = saved + opts.eps;
      double plus = evaluate();
      v.data()[i] = saved - opts.eps;
      double minus = evaluate();
      v.data()[i] = saved;
      numeric[i] = (plus - minus) / (2.0 * opts.eps);
    }
    double err = RelativeError(report.analytic[k], numeric);
    report.rel_err.push_back(err);
    report.max_rel_err = std::max(report.max_rel_err, err);
    report.numeric.push_back(std::move(numeric));
  }
  return report;
}

double GradCheck(const std::function<Value()> &fn,
                 const std::vector<Value> &inputs, const GradCheckOptions &opts) {
  return GradCheckDetailed(fn, inputs, opts).max_rel_err;
}

}  // namespace ag
}  // namespace vqvc

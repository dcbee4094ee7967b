// evaluation/mcd.cc

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

#include "evaluation/mcd.h"

#include <cmath>

namespace vqvc {

const double kMcdConstant = 10.0 / std::log(10.0) * std::sqrt(2.0);

double MelCepstralDistortion(const FeatureSeq &converted, const FeatureSeq &reference,
                             DtwPath *path) {
  if (converted.Dim() != kDefaultCepstrumOrder ||
      reference.Dim() != kDefaultCepstrumOrder)
    throw Error(fmt::format("mcd: expected {}-dimensional mel-cepstra, got {} and {}",
                            kDefaultCepstrumOrder, converted.Dim(), reference.Dim()));
  const int dims = kDefaultCepstrumOrder - 1;
  DtwPath p = Dtw(converted.data, reference.data, 1, dims);
  double sum = 0.0;
  for (auto [i, j] : p.steps) {
    double d2 = (converted.data.row(i).segment(1, dims) -
                 reference.data.row(j).segment(1, dims)).squaredNorm();
    sum += std::sqrt(d2);
  }
  const double mean = sum / double(p.steps.size());
  if (path) *path = std::move(p);
  return kMcdConstant * mean;
}

}  // namespace vqvc

// evaluation/mcd.h

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

#ifndef VQVC_EVALUATION_MCD_H_
#define VQVC_EVALUATION_MCD_H_

#include "evaluation/dtw.h"
#include "signal/signal-types.h"

namespace vqvc {

// (10 / ln 10) * sqrt(2).
extern const double kMcdConstant;

// Both inputs T x 35 mel-cepstra.  c0 is left out: the sequences are
// DTW-aligned on c1..c34 and each aligned pair contributes
// (10 / ln 10) * sqrt(2 * sum_{d=1}^{34} (dc_d)^2); the mean over the path is
// returned in dB.
double MelCepstralDistortion(const FeatureSeq &converted, const FeatureSeq &reference,
                             DtwPath *path = nullptr);

}  // namespace vqvc

#endif  // VQVC_EVALUATION_MCD_H_

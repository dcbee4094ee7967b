// vqmodel/quantizer.h

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

#ifndef VQVC_VQMODEL_QUANTIZER_H_
#define VQVC_VQMODEL_QUANTIZER_H_

#include <vector>

#include "autograd/ops.h"

namespace vqvc {

struct VQResult {
  ag::Value q;                // codebook rows e_{k(t)}, same shape as h
  ag::Value st;               // h + sg[q - h], what the decoder consumes
  std::vector<int> indices;   // one per frame
  ag::Value codebook_loss;    // weighted mean_t ||sg[h_t] - e_k||^2
  ag::Value commitment_loss;  // weighted mean_t ||h_t - sg[e_k]||^2
};

// Nearest codebook entry per frame of h [..., Dz] against codebook [K, Dz];
// ties go to the lowest index.  `frame_weights`, when non-empty, holds one
// non-negative weight per frame (padding gets 0) and turns both losses into
// weighted means.
VQResult Quantize(const ag::Value &h, const ag::Value &codebook,
                  const std::vector<double> &frame_weights = {});

// The argmin alone, on plain row-major buffers.
std::vector<int> NearestCodes(const std::vector<double> &h, int num_frames,
                              const std::vector<double> &codebook, int k,
                              int dim);

}  // namespace vqvc

#endif  // VQVC_VQMODEL_QUANTIZER_H_

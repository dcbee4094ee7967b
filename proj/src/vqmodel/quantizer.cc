// vqmodel/quantizer.cc

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

#include "vqmodel/quantizer.h"

#include <limits>

namespace vqvc {

using ag::Value;

std::vector<int> NearestCodes(const std::vector<double> &h, int num_frames,
                              const std::vector<double> &codebook, int k,
                              int dim) {
  std::vector<int> idx(num_frames);
  for (int t = 0; t < num_frames; t++) {
    const double *ht = h.data() + static_cast<size_t>(t) * dim;
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int j = 0; j < k; j++) {
      const double *e = codebook.data() + static_cast<size_t>(j) * dim;
      double d = 0.0;
      for (int c = 0; c < dim; c++) {
        double diff = ht[c] - e[c];
        d += diff * diff;
      }
      if (d < best) {  // strict: first minimum wins
        best = d;
        arg = j;
      }
    }
    idx[t] = arg;
  }
  return idx;
}

VQResult Quantize(const Value &h, const Value &codebook,
                  const std::vector<double> &frame_weights) {
  if (codebook.rank() != 2)
    throw Error("quantize: codebook must be [K, D], got " +
                ag::ShapeString(codebook.shape()));
  const int k = codebook.dim(0), dim = codebook.dim(1);
  if (h.last_dim() != dim)
    throw Error(fmt::format("quantize: latent width {} != codebook width {}",
                            h.last_dim(), dim));
  const int frames = static_cast<int>(h.numel() / dim);
  if (!frame_weights.empty() && frame_weights.size() != size_t(frames))
    throw Error("quantize: frame weight count does not match frames");

  std::vector<int> indices = NearestCodes(h.data(), frames, codebook.data(), k, dim);
  // Holding the assignment fixed lets finite differences see the same
  // piecewise-smooth function that backward differentiates.
  std::vector<double> as_double(indices.begin(), indices.end());
  as_double = ag::InterceptFrozen(std::move(as_double));
  for (int t = 0; t < frames; t++) indices[t] = static_cast<int>(as_double[t]);

  ag::Shape prefix(h.shape().begin(), h.shape().end() - 1);
  VQResult r;
  r.indices = indices;
  r.q = ag::EmbeddingLookup(codebook, indices, prefix);
  r.st = ag::StraightThrough(h, r.q);

  std::vector<double> w(h.numel());
  double total = 0.0;
  for (int t = 0; t < frames; t++)
    total += frame_weights.empty() ? 1.0 : frame_weights[t];
  if (total <= 0.0) throw Error("quantize: all frame weights are zero");
  for (int t = 0; t < frames; t++) {
    double wt = (frame_weights.empty() ? 1.0 : frame_weights[t]) / total;
    for (int c = 0; c < dim; c++) w[size_t(t) * dim + c] = wt;
  }
  Value weights = Value::FromData(h.shape(), std::move(w));
  r.codebook_loss = ag::Sum(
      ag::Mul(ag::Square(ag::Sub(ag::StopGradient(h), r.q)), weights));
  r.commitment_loss = ag::Sum(
      ag::Mul(ag::Square(ag::Sub(h, ag::StopGradient(r.q))), weights));
  return r;
}

}  // namespace vqvc

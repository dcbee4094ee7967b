// losses/stft-loss.h

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

#ifndef VQVC_LOSSES_STFT_LOSS_H_
#define VQVC_LOSSES_STFT_LOSS_H_

#include <vector>

#include "autograd/ops.h"

namespace vqvc {

struct StftResolution {
  int fft_size;
  int hop_size;
  int win_size;
};

// (64,16,32), (128,32,64), (256,64,128).
std::vector<StftResolution> DefaultStftResolutions();

struct StftLossTerms {
  StftResolution res;
  bool computed = false;  // false when the sequence is shorter than win_size
  ag::Value spectral_convergence;
  ag::Value log_magnitude;
};

// Multiresolution STFT loss along the time axis of feature sequences
// x, x_hat [B, T, C] (or [T, C]); every channel is its own signal.  Frames
// are taken without padding, 1 + (T - win) / hop of them, Hann-windowed and
// zero-padded to fft_size.  Per resolution:
//
//   ||M - M_hat||_F / ||M||_F  +  mean |log M - log M_hat|
//
// with the Frobenius norms over all items and channels, and magnitudes
// floored at sqrt(1e-7).  The result averages the computed resolutions;
// resolutions longer than T are skipped with a warning, and if none fit
// the loss is 0.
ag::Value MultiResStftLoss(const ag::Value &x, const ag::Value &x_hat,
                           const std::vector<StftResolution> &resolutions,
                           std::vector<StftLossTerms> *terms = nullptr);

// Largest win_size among `resolutions` (0 if empty).
int MaxStftWindow(const std::vector<StftResolution> &resolutions);

}  // namespace vqvc

#endif  // VQVC_LOSSES_STFT_LOSS_H_

// signal/stft.h

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

#ifndef VQVC_SIGNAL_STFT_H_
#define VQVC_SIGNAL_STFT_H_

#include <complex>
#include <cstdint>
#include <vector>

#include "signal/signal-types.h"

namespace vqvc {

// Thin FFTW wrapper.  Plans are shared process-wide (creation is serialized);
// each instance owns aligned scratch, so an instance must not be shared
// between threads but separate instances may run concurrently.
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;

  int Size() const { return n_; }
  // in: n reals.  out: n/2+1 bins.
  void Forward(const double *in, std::complex<double> *out);
  // in: n/2+1 bins.  out: n reals, scaled by 1/n (a true inverse).
  void Inverse(const std::complex<double> *in, double *out);

 private:
  int n_;
  double *real_ = nullptr;
  void *complex_ = nullptr;
  void *forward_plan_ = nullptr;
  void *inverse_plan_ = nullptr;
};

// Periodic Hann window of length n.
std::vector<double> HannWindow(int n);

// Maps an arbitrary index onto [0, n) by mirror reflection without
// repeating the edge sample.
int ReflectIndex(int i, int n);

// Number of frames produced for a signal of `num_samples` samples:
// ceil(num_samples / hop).
int NumStftFrames(int num_samples, const StftOptions &opts);

// Hann-windowed STFT with win/2 reflect padding at both ends.
ComplexSpectrogram ComputeStft(const Waveform &wav, const StftOptions &opts);
Spectrogram ComputeMagnitudeSpectrogram(const Waveform &wav,
                                        const StftOptions &opts);

// Weighted overlap-add inverse (least-squares estimate for a modified STFT).
// Returns `num_samples` samples; the padding is stripped.
Waveform InverseStft(const ComplexSpectrogram &spec, int num_samples,
                     int sample_rate_hz);

// ||est - ref||_F / ||ref||_F.  Zero when both are zero.
double SpectralConvergence(const RowMatrix &est, const RowMatrix &ref);

struct GriffinLimOptions {
  int n_iters = 60;
  uint64_t seed = 0;
  bool random_phase_init = false;  // default is zero-phase
  // Fast Griffin-Lim extrapolation; 0 gives the classic algorithm.
  double momentum = 0.99;
};

struct GriffinLimResult {
  Waveform wav;
  // Spectral convergence after each iteration.
  std::vector<double> convergence;
};

// Griffin-Lim phase retrieval.  `num_samples` < 0 means frames * hop.
GriffinLimResult GriffinLim(const Spectrogram &spec,
                            const GriffinLimOptions &gl_opts,
                            int sample_rate_hz, int num_samples = -1);

}  // namespace vqvc

#endif  // VQVC_SIGNAL_STFT_H_

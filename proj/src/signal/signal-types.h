// signal/signal-types.h

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

#ifndef VQVC_SIGNAL_SIGNAL_TYPES_H_
#define VQVC_SIGNAL_SIGNAL_TYPES_H_

#include <complex>
#include <vector>

#include "base/vqvc-common.h"

namespace vqvc {

constexpr int kDefaultSampleRate = 22050;
constexpr int kDefaultMelChannels = 80;
constexpr int kDefaultCepstrumOrder = 35;
constexpr double kLogFloor = 1e-10;

struct Waveform {
  int sample_rate_hz = kDefaultSampleRate;
  std::vector<double> samples;
};

struct StftOptions {
  int fft_size = 1024;
  int hop_size = 256;
  int win_size = 1024;
  void Check() const;
};

/// Magnitude spectrogram, frames x (fft_size/2 + 1).
struct Spectrogram {
  RowMatrix magnitude;
  StftOptions opts;
  int NumFrames() const { return static_cast<int>(magnitude.rows()); }
};

using ComplexRowMatrix =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                  Eigen::RowMajor>;

/// Complex STFT; kept around when phase is needed (inversion, Griffin-Lim).
struct ComplexSpectrogram {
  ComplexRowMatrix bins;
  StftOptions opts;
  int NumFrames() const { return static_cast<int>(bins.rows()); }
};

enum class FeatureKind : uint8_t {
  kMelFilterbank = 0,
  kMelCepstrum = 1,
  kLatent = 2,
  kF0 = 3,
};

struct FeatureSeq {
  RowMatrix data;  // T x D
  FeatureKind kind = FeatureKind::kMelFilterbank;
  int NumFrames() const { return static_cast<int>(data.rows()); }
  int Dim() const { return static_cast<int>(data.cols()); }
};

struct MelOptions {
  int n_mels = kDefaultMelChannels;
  double fmin = 70.0;
  double fmax = 8000.0;
};

struct FeatureOptions {
  int sample_rate_hz = kDefaultSampleRate;
  StftOptions stft;
  MelOptions mel;
};

/// f0_hz[t] > 0 exactly when voiced[t].
struct F0Contour {
  std::vector<double> f0_hz;
  std::vector<bool> voiced;
  int NumFrames() const { return static_cast<int>(f0_hz.size()); }
};

struct F0Options {
  double fmin = 70.0;
  double fmax = 400.0;
  double voicing_threshold = 0.3;
  double rms_threshold = 1e-4;
};

/// Per-frame decoder conditioning.  lcf0 is the speaker-normalized
/// continuous log-F0.
struct AuxFeatures {
  std::vector<double> lcf0;
  std::vector<double> uv;
  int speaker_index = 0;
  int NumFrames() const { return static_cast<int>(lcf0.size()); }
};

struct SpeakerStats {
  int speaker_index = 0;
  double lcf0_mean = 0.0;
  double lcf0_std = 1.0;
  std::vector<double> feat_mean;
  std::vector<double> feat_std;
};

}  // namespace vqvc

#endif  // VQVC_SIGNAL_SIGNAL_TYPES_H_

// signal/mel.cc

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

#include "signal/mel.h"

#include <cmath>
#include <numbers>

namespace vqvc {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

RowMatrix MelMatrix(const MelOptions &mel, int fft_size, int sample_rate_hz) {
  if (mel.n_mels < 1) throw Error("mel: n_mels must be positive");
  if (!(mel.fmin >= 0.0 && mel.fmin < mel.fmax))
    throw Error(fmt::format("mel: need 0 <= fmin < fmax (got {}, {})", mel.fmin,
                            mel.fmax));
  if (mel.fmax > sample_rate_hz / 2.0)
    throw Error(fmt::format("mel: fmax {} exceeds Nyquist {}", mel.fmax,
                            sample_rate_hz / 2.0));
  const int num_bins = fft_size / 2 + 1;
  const double mel_lo = HzToMel(mel.fmin), mel_hi = HzToMel(mel.fmax);
  std::vector<double> edges(mel.n_mels + 2);
  for (int i = 0; i < mel.n_mels + 2; i++)
    edges[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * i / (mel.n_mels + 1));

  RowMatrix m = RowMatrix::Zero(mel.n_mels, num_bins);
  for (int r = 0; r < mel.n_mels; r++) {
    double lo = edges[r], center = edges[r + 1], hi = edges[r + 2];
    for (int k = 0; k < num_bins; k++) {
      double f = static_cast<double>(k) * sample_rate_hz / fft_size;
      double up = (f - lo) / (center - lo);
      double down = (hi - f) / (hi - center);
      m(r, k) = std::max(0.0, std::min(up, down));
    }
    if (m.row(r).sum() <= 0.0)
      throw Error(fmt::format(
          "mel: filter {} of {} covers no FFT bin (fft_size {} too small)", r,
          mel.n_mels, fft_size));
  }
  return m;
}

FeatureSeq LogMelFromMagnitude(const Spectrogram &spec,
                               const RowMatrix &mel_matrix) {
  if (spec.magnitude.cols() != mel_matrix.cols())
    throw Error("log-mel: spectrogram and filterbank widths differ");
  FeatureSeq out;
  out.kind = FeatureKind::kMelFilterbank;
  out.data = (spec.magnitude * mel_matrix.transpose())
                 .unaryExpr([](double v) { return std::log(std::max(v, kLogFloor)); });
  return out;
}

FeatureSeq LogMelSpectrogram(const Waveform &wav, const FeatureOptions &opts) {
  RowMatrix mel = MelMatrix(opts.mel, opts.stft.fft_size, opts.sample_rate_hz);
  return LogMelFromMagnitude(ComputeMagnitudeSpectrogram(wav, opts.stft), mel);
}

RowMatrix DctMatrix(int order, int n) {
  RowMatrix d(order, n);
  for (int k = 0; k < order; k++) {
    double scale = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (int i = 0; i < n; i++)
      d(k, i) = scale * std::cos(std::numbers::pi * k * (2 * i + 1) / (2.0 * n));
  }
  return d;
}

FeatureSeq MelCepstrum(const FeatureSeq &log_mel, int order) {
  if (order < 1 || order > log_mel.Dim())
    throw Error(fmt::format("mel-cepstrum: order {} exceeds {} mel channels",
                            order, log_mel.Dim()));
  FeatureSeq out;
  out.kind = FeatureKind::kMelCepstrum;
  out.data = log_mel.data * DctMatrix(order, log_mel.Dim()).transpose();
  return out;
}

Waveform SynthesizeFromLogMel(const FeatureSeq &log_mel,
                              const FeatureOptions &opts,
                              const GriffinLimOptions &gl_opts) {
  RowMatrix mel = MelMatrix(opts.mel, opts.stft.fft_size, opts.sample_rate_hz);
  if (log_mel.Dim() != mel.rows())
    throw Error("synthesis: feature width does not match mel configuration");
  // Minimum-norm least-squares inverse of the filterbank.
  RowMatrix pinv = mel.completeOrthogonalDecomposition().pseudoInverse();
  Spectrogram spec;
  spec.opts = opts.stft;
  RowMatrix mel_mag = log_mel.data.array().exp().matrix();
  spec.magnitude = (mel_mag * pinv.transpose()).cwiseMax(0.0);
  return GriffinLim(spec, gl_opts, opts.sample_rate_hz).wav;
}

}  // namespace vqvc

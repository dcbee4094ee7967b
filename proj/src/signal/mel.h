// signal/mel.h

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

#ifndef VQVC_SIGNAL_MEL_H_
#define VQVC_SIGNAL_MEL_H_

#include "signal/signal-types.h"
#include "signal/stft.h"

namespace vqvc {

// HTK mel scale: m = 2595 log10(1 + f / 700).
double HzToMel(double hz);
double MelToHz(double mel);

// n_mels x (fft_size/2 + 1) triangular filterbank with n_mels + 2 edge
// points spaced uniformly in mel between fmin and fmax.  Throws when some
// filter would not cover any FFT bin.
RowMatrix MelMatrix(const MelOptions &mel, int fft_size, int sample_rate_hz);

// ln(max(mel_matrix * |X|, 1e-10)) per frame.
FeatureSeq LogMelFromMagnitude(const Spectrogram &spec, const RowMatrix &mel_matrix);
FeatureSeq LogMelSpectrogram(const Waveform &wav, const FeatureOptions &opts);

// order x n orthonormal DCT-II basis, rows are basis vectors.
RowMatrix DctMatrix(int order, int n);

// Truncated orthonormal DCT-II over the log-mel channels (c0 .. c_{order-1}).
FeatureSeq MelCepstrum(const FeatureSeq &log_mel, int order = kDefaultCepstrumOrder);

// Inverts a log-mel sequence back to audio: exp, least-squares projection
// onto the linear-frequency magnitude (clamped at zero), then Griffin-Lim.
Waveform SynthesizeFromLogMel(const FeatureSeq &log_mel, const FeatureOptions &opts,
                              const GriffinLimOptions &gl_opts);

}  // namespace vqvc

#endif  // VQVC_SIGNAL_MEL_H_

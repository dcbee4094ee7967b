// signal/pitch.h

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

#ifndef VQVC_SIGNAL_PITCH_H_
#define VQVC_SIGNAL_PITCH_H_

#include <string>
#include <vector>

#include "signal/signal-types.h"

namespace vqvc {

// Normalized-autocorrelation pitch tracker.  Frames use the same centering,
// window length and hop as ComputeStft, so the frame count matches the
// spectral features.  A frame is voiced iff its autocorrelation peak is at
// least voicing_threshold and its RMS is at least rms_threshold.
F0Contour ExtractF0(const Waveform &wav, const F0Options &f0_opts,
                    const StftOptions &stft_opts);

struct ContinuousF0 {
  std::vector<double> lcf0;  // z-scored continuous log-F0
  std::vector<double> uv;    // 1 = voiced
  bool all_unvoiced = false;
};

// Log-F0 on voiced frames, linear interpolation across interior unvoiced
// gaps, nearest voiced value held at the edges, then z-scored with the
// speaker's log-F0 statistics.  An utterance with no voiced frame yields
// lcf0 == 0 everywhere.
ContinuousF0 ContinuousLogF0(const F0Contour &f0, const SpeakerStats &stats);

// Same fill rule without the normalization step.
std::vector<double> InterpolateLogF0(const F0Contour &f0);

struct UtteranceFeatures {
  FeatureSeq log_mel;
  F0Contour f0;
};

// Feature statistics over all frames, log-F0 statistics over voiced frames
// (population standard deviation).  Every std is floored at 1e-8.
SpeakerStats ComputeSpeakerStats(int speaker_index, const std::string &speaker_name,
                                 const std::vector<UtteranceFeatures> &utts);

// Per-dimension z-score and its inverse.
RowMatrix NormalizeFeatures(const RowMatrix &feats, const SpeakerStats &stats);
RowMatrix DenormalizeFeatures(const RowMatrix &feats, const SpeakerStats &stats);

}  // namespace vqvc

#endif  // VQVC_SIGNAL_PITCH_H_

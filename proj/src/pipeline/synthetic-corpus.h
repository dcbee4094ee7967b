// pipeline/synthetic-corpus.h

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

#ifndef VQVC_PIPELINE_SYNTHETIC_CORPUS_H_
#define VQVC_PIPELINE_SYNTHETIC_CORPUS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "pipeline/corpus.h"
#include "signal/signal-types.h"

namespace vqvc {

struct SyntheticCorpusOptions {
  int n_speakers = 4;
  int utts_per_speaker = 20;
  uint64_t seed = 0;
  int sample_rate_hz = kDefaultSampleRate;
};

struct SyntheticSpeaker {
  std::string name;
  double base_f0_hz;
  double tilt_db_per_octave;
  double formant_scale;
};

// Speaker i gets base F0 {120, 170, 220, 280}[i % 4] Hz (raised 3% per full
// cycle of four), its own spectral tilt and formant scale.
SyntheticSpeaker SyntheticSpeakerFor(int index);

// One utterance: text `text_index` spoken by speaker `spk`.  The text fixes
// the vowel sequence, durations, pauses and the relative F0 and amplitude
// contours, so equal texts give equal lengths across speakers.  Pauses are
// digital silence.
Waveform SynthesizeUtterance(const SyntheticSpeaker &spk, int text_index,
                             const SyntheticCorpusOptions &opts);

std::string SyntheticTextId(int text_index);

// Writes wav/<speaker>/<utt_id>.wav and manifest.tsv under out_dir.
CorpusManifest GenerateSyntheticCorpus(const std::string &out_dir,
                                       const SyntheticCorpusOptions &opts);

}  // namespace vqvc

#endif  // VQVC_PIPELINE_SYNTHETIC_CORPUS_H_

// trainer/batch.h

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

#ifndef VQVC_TRAINER_BATCH_H_
#define VQVC_TRAINER_BATCH_H_

#include <random>
#include <string>
#include <vector>

#include "autograd/value.h"
#include "base/vqvc-common.h"

namespace vqvc {

// One utterance, ready for the model: features z-scored with its speaker's
// stats, lcf0 z-scored likewise.
struct TrainUtterance {
  std::string utt_id;
  int speaker = 0;
  RowMatrix feats;  // T x D
  std::vector<double> lcf0;
  std::vector<double> uv;
  int NumFrames() const { return static_cast<int>(feats.rows()); }
};

struct TrainCorpus {
  int n_speakers = 0;
  std::vector<TrainUtterance> train;
  std::vector<TrainUtterance> dev;
  // Indices into `train`, per speaker.  Built by Index().
  std::vector<std::vector<int>> train_by_speaker;
  void Index();
};

struct Batch {
  int batch = 0, frames = 0, dim = 0;
  std::vector<double> features;  // B*T*D
  std::vector<double> lcf0, uv;  // B*T
  std::vector<double> mask;      // B*T, 1 on real frames, 0 on padding
  std::vector<int> speakers;
  std::vector<std::string> utt_ids;
  ag::Value FeatureValue() const;
};

// `segment_len` frames cut at a uniform offset; shorter utterances are
// zero-padded at the end (mask 0).
void AppendSegment(const TrainUtterance &u, int segment_len, std::mt19937_64 *rng,
                   Batch *b);

// Utterances drawn uniformly from the training set.
Batch SampleBatch(const TrainCorpus &corpus, int batch_size, int segment_len,
                  std::mt19937_64 *rng);

// One segment per requested speaker, drawn from that speaker's training
// utterances.
Batch SampleSpeakerBatch(const TrainCorpus &corpus,
                         const std::vector<int> &speakers, int segment_len,
                         std::mt19937_64 *rng);

// A whole utterance as a batch of one.
Batch UtteranceBatch(const TrainUtterance &u);

}  // namespace vqvc

#endif  // VQVC_TRAINER_BATCH_H_

// trainer/batch.cc

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

#include "trainer/batch.h"

namespace vqvc {

void TrainCorpus::Index() {
  if (n_speakers < 1) throw Error("corpus: no speakers");
  train_by_speaker.assign(n_speakers, {});
  for (size_t i = 0; i < train.size(); i++) {
    int s = train[i].speaker;
    if (s < 0 || s >= n_speakers)
      throw Error(fmt::format("corpus: utterance {} has speaker index {}",
                              train[i].utt_id, s));
    train_by_speaker[s].push_back(static_cast<int>(i));
  }
}

ag::Value Batch::FeatureValue() const {
  return ag::Value::FromData({batch, frames, dim}, features);
}

void AppendSegment(const TrainUtterance &u, int segment_len, std::mt19937_64 *rng,
                   Batch *b) {
  const int len = u.NumFrames();
  const int dim = static_cast<int>(u.feats.cols());
  if (b->batch == 0) {
    b->frames = segment_len;
    b->dim = dim;
  } else if (b->dim != dim || b->frames != segment_len) {
    throw Error("batch: inconsistent segment shape");
  }
  if (len < 1) throw Error("batch: utterance " + u.utt_id + " is empty");
  int offset = 0;
  if (len > segment_len)
    offset = std::uniform_int_distribution<int>(0, len - segment_len)(*rng);
  for (int t = 0; t < segment_len; t++) {
    int src = offset + t;
    bool valid = src < len;
    for (int d = 0; d < dim; d++)
      b->features.push_back(valid ? u.feats(src, d) : 0.0);
    b->lcf0.push_back(valid ? u.lcf0[src] : 0.0);
    b->uv.push_back(valid ? u.uv[src] : 0.0);
    b->mask.push_back(valid ? 1.0 : 0.0);
  }
  b->speakers.push_back(u.speaker);
  b->utt_ids.push_back(u.utt_id);
  b->batch++;
}

Batch SampleBatch(const TrainCorpus &corpus, int batch_size, int segment_len,
                  std::mt19937_64 *rng) {
  if (corpus.train.empty()) throw Error("batch: empty training set");
  Batch b;
  std::uniform_int_distribution<int> pick(0, int(corpus.train.size()) - 1);
  for (int i = 0; i < batch_size; i++)
    AppendSegment(corpus.train[pick(*rng)], segment_len, rng, &b);
  return b;
}

Batch SampleSpeakerBatch(const TrainCorpus &corpus,
                         const std::vector<int> &speakers, int segment_len,
                         std::mt19937_64 *rng) {
  Batch b;
  for (int s : speakers) {
    if (s < 0 || s >= int(corpus.train_by_speaker.size()) ||
        corpus.train_by_speaker[s].empty())
      throw Error(fmt::format("batch: no training utterances for speaker {}", s));
    const auto &pool = corpus.train_by_speaker[s];
    int i = std::uniform_int_distribution<int>(0, int(pool.size()) - 1)(*rng);
    AppendSegment(corpus.train[pool[i]], segment_len, rng, &b);
  }
  return b;
}

Batch UtteranceBatch(const TrainUtterance &u) {
  Batch b;
  std::mt19937_64 unused(0);
  AppendSegment(u, u.NumFrames(), &unused, &b);
  return b;
}

}  // namespace vqvc

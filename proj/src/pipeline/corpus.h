// pipeline/corpus.h

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

#ifndef VQVC_PIPELINE_CORPUS_H_
#define VQVC_PIPELINE_CORPUS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "base/vqvc-common.h"

namespace vqvc {

struct UtteranceRecord {
  std::string speaker;
  std::string utt_id;
  std::string text_id;
  std::string wav_path;  // relative to the corpus directory
  double duration_s = 0.0;
};

// manifest.tsv in the corpus directory, one header line then one record
// per line: speaker, utt_id, text_id, wav_path, duration_s.
struct CorpusManifest {
  std::vector<UtteranceRecord> utts;
  std::vector<std::string> Speakers() const;  // sorted, unique
  // Throws on a duplicate utt_id.
  void Check() const;
};

extern const char *const kManifestName;

void WriteManifest(const CorpusManifest &m, const std::string &corpus_dir);
CorpusManifest ReadManifest(const std::string &corpus_dir);

struct SplitLists {
  std::vector<std::string> train, dev, eval;  // utt ids
};

// Per speaker: utterances ordered by a seeded hash of their text id, the
// first train_n go to train, the next dev_n to dev, the rest to eval.
// Ordering by text id keeps the eval sets of different speakers on the
// same texts, which is what pairs them for evaluation.
SplitLists SplitCorpus(const CorpusManifest &m, int train_n, int dev_n,
                       uint64_t seed);

// FNV-1a, stable across platforms.
uint64_t StableHash(const std::string &s);

}  // namespace vqvc

#endif  // VQVC_PIPELINE_CORPUS_H_

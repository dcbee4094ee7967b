// evaluation/evaluate-conversion.h

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

#ifndef VQVC_EVALUATION_EVALUATE_CONVERSION_H_
#define VQVC_EVALUATION_EVALUATE_CONVERSION_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evaluation/external-scorer.h"
#include "evaluation/mcd.h"
#include "vqmodel/conversion.h"

namespace vqvc {

// A source utterance to convert and the target speaker's utterance of the
// same text to compare against.
struct ConversionPair {
  std::string source_spk, target_spk, utt_id;
  UtteranceFeatures source;
  const SpeakerStats *source_stats = nullptr;
  const SpeakerStats *target_stats = nullptr;
  FeatureSeq reference_log_mel;
};

struct McdRow {
  std::string source_spk, target_spk, utt_id;
  double mcd_db = 0.0;
  std::optional<double> mos;
};

struct McdReport {
  std::vector<McdRow> rows;
  std::map<std::pair<std::string, std::string>, double> pair_means;
  double corpus_mean = 0.0;
  bool has_mos_column = false;
};

// Fills pair means and the corpus mean (the mean over all rows, i.e. pair
// means weighted by their row counts).
void SummarizeMcd(McdReport *report);

// MCD between two log-mel sequences after converting both to 35-dim
// mel-cepstra.
double LogMelMcd(const FeatureSeq &converted_log_mel, const FeatureSeq &reference_log_mel);

using Converter = std::function<FeatureSeq(const ConversionPair &)>;

// Converter backed by ConvertUtterance on `model`.
Converter ModelConverter(const HierarchicalVqvae &model);

// Converts every pair (in parallel over `jobs` threads) and scores it.
// `converted_out`, if given, receives the converted log-mel per pair.
McdReport EvaluateConversion(const std::vector<ConversionPair> &pairs,
                             const Converter &convert, int jobs = 1,
                             std::vector<FeatureSeq> *converted_out = nullptr);

// Adds a MOS column when the scorer is configured; rows whose scoring
// failed read "NA".
void AttachScores(McdReport *report, const ExternalScorer &scorer,
                  const std::vector<std::string> &wav_paths);

// CSV "source_spk,target_spk,utt_id,mcd_db[,mos]" preceded by '#' comment
// lines describing the measurement and the summary means.
void WriteMcdReport(const McdReport &report, const std::string &path);
McdReport ReadMcdReport(const std::string &path);

}  // namespace vqvc

#endif  // VQVC_EVALUATION_EVALUATE_CONVERSION_H_

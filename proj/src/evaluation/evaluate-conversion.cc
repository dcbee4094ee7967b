// evaluation/evaluate-conversion.cc

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

#include "evaluation/evaluate-conversion.h"

#include <fstream>
#include <sstream>

#include "base/file-util.h"
#include "base/parallel.h"
#include "signal/mel.h"

namespace vqvc {

void SummarizeMcd(McdReport *report) {
  std::map<std::pair<std::string, std::string>, std::pair<double, int>> acc;
  double total = 0.0;
  for (const McdRow &r : report->rows) {
    auto &a = acc[{r.source_spk, r.target_spk}];
    a.first += r.mcd_db;
    a.second++;
    total += r.mcd_db;
  }
  report->pair_means.clear();
  for (const auto &[k, a] : acc) report->pair_means[k] = a.first / a.second;
  report->corpus_mean = report->rows.empty() ? 0.0 : total / report->rows.size();
}

double LogMelMcd(const FeatureSeq &converted_log_mel, const FeatureSeq &reference_log_mel) {
  return MelCepstralDistortion(MelCepstrum(converted_log_mel),
                               MelCepstrum(reference_log_mel));
}

Converter ModelConverter(const HierarchicalVqvae &model) {
  return [&model](const ConversionPair &p) {
    if (!p.source_stats || !p.target_stats)
      throw Error("evaluate: pair " + p.utt_id + " lacks speaker stats");
    return ConvertUtterance(model, p.source, *p.source_stats, *p.target_stats).converted;
  };
}

McdReport EvaluateConversion(const std::vector<ConversionPair> &pairs,
                             const Converter &convert, int jobs,
                             std::vector<FeatureSeq> *converted_out) {
  McdReport report;
  report.rows.resize(pairs.size());
  std::vector<FeatureSeq> converted(pairs.size());
  ParallelFor(static_cast<int>(pairs.size()), jobs, [&](int i) {
    const ConversionPair &p = pairs[i];
    converted[i] = convert(p);
    report.rows[i] = {p.source_spk, p.target_spk, p.utt_id,
                      LogMelMcd(converted[i], p.reference_log_mel), std::nullopt};
  });
  SummarizeMcd(&report);
  if (converted_out) *converted_out = std::move(converted);
  return report;
}

void AttachScores(McdReport *report, const ExternalScorer &scorer,
                  const std::vector<std::string> &wav_paths) {
  if (!scorer.configured()) {
    spdlog::info("evaluate: no external scorer configured; MOS column omitted");
    return;
  }
  if (wav_paths.size() != report->rows.size())
    throw Error("evaluate: one WAV per report row required for scoring");
  report->has_mos_column = true;
  for (size_t i = 0; i < wav_paths.size(); i++) {
    auto s = scorer.Score({wav_paths[i]});
    report->rows[i].mos = s ? std::optional<double>((*s)[0]) : std::nullopt;
  }
}

void WriteMcdReport(const McdReport &report, const std::string &path) {
  AtomicWrite(path, [&](std::ostream &os) {
    os << "# mel-cepstral distortion in dB: (10/ln10)*sqrt(2*sum_d (dc_d)^2), d = 1..34\n"
       << "# c0 (power) excluded; 35-dim mel-cepstra = orthonormal DCT-II of the log-mel\n"
       << "# alignment: DTW on c1..c34, squared Euclidean, steps (1,0) (0,1) (1,1)\n"
       << fmt::format("# pairs: {}  corpus_mean_mcd_db: {:.6f}\n", report.rows.size(),
                      report.corpus_mean);
    for (const auto &[k, v] : report.pair_means)
      os << fmt::format("# pair_mean {} {} {:.6f}\n", k.first, k.second, v);
    os << "source_spk,target_spk,utt_id,mcd_db" << (report.has_mos_column ? ",mos" : "")
       << "\n";
    for (const McdRow &r : report.rows) {
      os << fmt::format("{},{},{},{:.6f}", r.source_spk, r.target_spk, r.utt_id, r.mcd_db);
      if (report.has_mos_column)
        os << "," << (r.mos ? fmt::format("{:.6f}", *r.mos) : std::string("NA"));
      os << "\n";
    }
  });
}

McdReport ReadMcdReport(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open report " + path);
  McdReport report;
  std::string line;
  bool header = false;
  int lineno = 0;
  while (std::getline(is, line)) {
    lineno++;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (!header) {
      if (f.size() < 4 || f[0] != "source_spk" || f[1] != "target_spk" ||
          f[2] != "utt_id" || f[3] != "mcd_db" || f.size() > 5 ||
          (f.size() == 5 && f[4] != "mos"))
        throw Error(fmt::format("{}:{}: malformed report header", path, lineno));
      report.has_mos_column = f.size() == 5;
      header = true;
      continue;
    }
    if (f.size() != (report.has_mos_column ? 5u : 4u))
      throw Error(fmt::format("{}:{}: wrong field count", path, lineno));
    McdRow r{f[0], f[1], f[2], 0.0, std::nullopt};
    try {
      r.mcd_db = std::stod(f[3]);
      if (report.has_mos_column && f[4] != "NA") r.mos = std::stod(f[4]);
    } catch (const std::exception &) {
      throw Error(fmt::format("{}:{}: non-numeric value", path, lineno));
    }
    report.rows.push_back(r);
  }
  if (!header) throw Error(path + ": report has no header line");
  SummarizeMcd(&report);
  return report;
}

}  // namespace vqvc

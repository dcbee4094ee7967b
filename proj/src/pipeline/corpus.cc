// pipeline/corpus.cc

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

#include "pipeline/corpus.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "base/file-util.h"

namespace vqvc {

const char *const kManifestName = "manifest.tsv";

uint64_t StableHash(const std::string &s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::string> CorpusManifest::Speakers() const {
  std::set<std::string> s;
  for (const auto &u : utts) s.insert(u.speaker);
  return {s.begin(), s.end()};
}

void CorpusManifest::Check() const {
  // Split lists name utterances by id alone, so ids are unique corpus-wide
  // (which implies unique per speaker).
  std::set<std::string> seen;
  for (const auto &u : utts) {
    if (u.speaker.empty() || u.utt_id.empty())
      throw Error("manifest: empty speaker or utterance id");
    if (!seen.insert(u.utt_id).second)
      throw Error("manifest: duplicate utterance id " + u.utt_id);
  }
}

void WriteManifest(const CorpusManifest &m, const std::string &corpus_dir) {
  m.Check();
  AtomicWrite(corpus_dir + "/" + kManifestName, [&](std::ostream &os) {
    os << "speaker\tutt_id\ttext_id\twav_path\tduration_s\n";
    for (const auto &u : m.utts)
      os << fmt::format("{}\t{}\t{}\t{}\t{:.6f}\n", u.speaker, u.utt_id, u.text_id,
                        u.wav_path, u.duration_s);
  });
}

CorpusManifest ReadManifest(const std::string &corpus_dir) {
  std::string path = corpus_dir + "/" + kManifestName;
  std::ifstream is(path);
  if (!is) throw Error("cannot open manifest " + path);
  CorpusManifest m;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    lineno++;
    if (lineno == 1 || line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) f.push_back(field);
    if (f.size() != 5)
      throw Error(fmt::format("{}:{}: expected 5 tab-separated fields, got {}",
                              path, lineno, f.size()));
    UtteranceRecord u{f[0], f[1], f[2], f[3], 0.0};
    try {
      u.duration_s = std::stod(f[4]);
    } catch (const std::exception &) {
      throw Error(fmt::format("{}:{}: bad duration '{}'", path, lineno, f[4]));
    }
    m.utts.push_back(u);
  }
  m.Check();
  return m;
}

SplitLists SplitCorpus(const CorpusManifest &m, int train_n, int dev_n,
                       uint64_t seed) {
  if (train_n < 1 || dev_n < 0) throw ConfigError("split: train_n >= 1, dev_n >= 0");
  std::map<std::string, std::vector<const UtteranceRecord *>> by_spk;
  for (const auto &u : m.utts) by_spk[u.speaker].push_back(&u);
  SplitLists s;
  for (auto &[spk, list] : by_spk) {
    if (int(list.size()) <= train_n + dev_n)
      throw ConfigError(fmt::format(
          "split: speaker {} has {} utterances, need more than train {} + dev {}",
          spk, list.size(), train_n, dev_n));
    auto key = [&](const UtteranceRecord *u) {
      return std::make_pair(MixSeed(seed, StableHash(u->text_id)), u->utt_id);
    };
    std::sort(list.begin(), list.end(),
              [&](auto *a, auto *b) { return key(a) < key(b); });
    for (size_t i = 0; i < list.size(); i++) {
      auto &dst = int(i) < train_n ? s.train : int(i) < train_n + dev_n ? s.dev : s.eval;
      dst.push_back(list[i]->utt_id);
    }
  }
  return s;
}

}  // namespace vqvc

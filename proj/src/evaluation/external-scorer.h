// evaluation/external-scorer.h

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

#ifndef VQVC_EVALUATION_EXTERNAL_SCORER_H_
#define VQVC_EVALUATION_EXTERNAL_SCORER_H_

#include <optional>
#include <string>
#include <vector>

namespace vqvc {

// Optional MOS predictor living outside this program.  Protocol: the WAV
// paths are passed as arguments and the program prints one number per
// path, one per line, on standard output.
class ExternalScorer {
 public:
  // An empty path means no scorer is configured.
  explicit ExternalScorer(std::string executable = "");
  bool configured() const { return !exe_.empty(); }

  // Scores for `wavs` in order, or nullopt (with a warning) if the program
  // fails, exits non-zero, or prints something other than one number per
  // path.
  std::optional<std::vector<double>> Score(const std::vector<std::string> &wavs) const;

 private:
  std::string exe_;
};

// Quotes `s` for /bin/sh.
std::string ShellQuote(const std::string &s);

}  // namespace vqvc

#endif  // VQVC_EVALUATION_EXTERNAL_SCORER_H_

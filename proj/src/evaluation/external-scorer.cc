// evaluation/external-scorer.cc

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

#include "evaluation/external-scorer.h"

#include <sys/wait.h>

#include <cstdio>
#include <sstream>

#include "base/vqvc-common.h"

namespace vqvc {

std::string ShellQuote(const std::string &s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') q += "'\\''";
    else q += c;
  }
  return q + "'";
}

ExternalScorer::ExternalScorer(std::string executable) : exe_(std::move(executable)) {}

std::optional<std::vector<double>> ExternalScorer::Score(
    const std::vector<std::string> &wavs) const {
  if (!configured()) return std::nullopt;
  std::string cmd = ShellQuote(exe_);
  for (const auto &w : wavs) cmd += " " + ShellQuote(w);
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    spdlog::warn("scorer: cannot start {}", exe_);
    return std::nullopt;
  }
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    spdlog::warn("scorer: {} failed (status {}); scores unavailable", exe_,
                 WIFEXITED(status) ? WEXITSTATUS(status) : -1);
    return std::nullopt;
  }
  std::vector<double> scores;
  std::istringstream lines(out);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      size_t used = 0;
      double v = std::stod(line, &used);
      if (line.find_first_not_of(" \t\r", used) != std::string::npos)
        throw std::invalid_argument(line);
      scores.push_back(v);
    } catch (const std::exception &) {
      spdlog::warn("scorer: non-numeric output line '{}'; scores unavailable", line);
      return std::nullopt;
    }
  }
  if (scores.size() != wavs.size()) {
    spdlog::warn("scorer: {} printed {} scores for {} files; scores unavailable",
                 exe_, scores.size(), wavs.size());
    return std::nullopt;
  }
  return scores;
}

}  // namespace vqvc

// base/vqvc-common.cc

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

#include "base/vqvc-common.h"

#include <spdlog/sinks/stdout_color_sinks.h>

#include <cstdlib>

namespace vqvc {

namespace {
bool g_debug = false;
}

void InitLogging() {
  static bool initialized = false;
  if (initialized) return;
  initialized = true;
  auto logger = spdlog::stderr_color_mt("vqvc");
  logger->set_pattern("%^%l%$ [%H:%M:%S] %v");
  spdlog::set_default_logger(logger);
  const char *env = std::getenv("VQVC_LOG");
  std::string level = env ? env : "info";
  if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
    g_debug = true;
  } else if (level == "warn") {
    spdlog::set_level(spdlog::level::warn);
  } else {
    spdlog::set_level(spdlog::level::info);
  }
}

bool DebugEnabled() { return g_debug; }

uint64_t MixSeed(uint64_t a, uint64_t b) {
  // splitmix64 over a simple combination of both words.
  uint64_t z = a * 0x9E3779B97F4A7C15ULL + b + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace vqvc

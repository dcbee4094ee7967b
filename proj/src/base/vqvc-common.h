// base/vqvc-common.h

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

#ifndef VQVC_BASE_VQVC_COMMON_H_
#define VQVC_BASE_VQVC_COMMON_H_

#include <Eigen/Dense>
#include <spdlog/fmt/fmt.h>
#include <spdlog/spdlog.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vqvc {

/// Row-major dense matrix; rows are frames, columns are channels.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                Eigen::RowMajor>;

/// All recoverable failures in the library are reported with this type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

/// Configuration problems (bad keys, inconsistent settings).  The CLI maps
/// these to exit status 2.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string &what) : Error(what) {}
};

/// Reads VQVC_LOG (debug, info, warn) and configures the default logger.
/// Unknown values fall back to info.
void InitLogging();

/// True when VQVC_LOG=debug.  Enables the NaN hook in autograd.
bool DebugEnabled();

/// 64-bit mixing function used to derive per-step and per-item seeds.
uint64_t MixSeed(uint64_t a, uint64_t b);

}  // namespace vqvc

#endif  // VQVC_BASE_VQVC_COMMON_H_

// tests/grad-suite.h

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

#ifndef VQVC_TESTS_GRAD_SUITE_H_
#define VQVC_TESTS_GRAD_SUITE_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace vqvc {
namespace testing {

// One finite-difference check, run once per seed.  `run` returns the
// relative error of the analytic gradient.
struct GradCase {
  std::string name;
  double tolerance;
  std::function<double(uint64_t seed)> run;
};

// Every primitive plus the composite paths used in training: dilated
// convolution, GLU, the full VQVAE objective, the speaker-adversarial path
// and the multiresolution STFT loss.
std::vector<GradCase> GradientSuite();

constexpr int kGradSeeds = 10;

}  // namespace testing
}  // namespace vqvc

#endif  // VQVC_TESTS_GRAD_SUITE_H_

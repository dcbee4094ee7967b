// signal/feature-io.h

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

#ifndef VQVC_SIGNAL_FEATURE_IO_H_
#define VQVC_SIGNAL_FEATURE_IO_H_

#include <istream>
#include <ostream>
#include <string>

#include "signal/signal-types.h"

namespace vqvc {

// Feature file layout (all little-endian):
//   "CRNK" | u8 version (1) | u8 kind | u32 T | u32 D | T*D float32 row-major
constexpr uint8_t kFeatureFileVersion = 1;

void WriteFeatures(const FeatureSeq &feats, std::ostream &os);
void WriteFeatures(const FeatureSeq &feats, const std::string &path);
FeatureSeq ReadFeatures(std::istream &is);
FeatureSeq ReadFeatures(const std::string &path);

// F0 contours travel as kind kF0 with a single column (0 = unvoiced).
FeatureSeq F0ToFeatures(const F0Contour &f0);
F0Contour FeaturesToF0(const FeatureSeq &feats);

}  // namespace vqvc

#endif  // VQVC_SIGNAL_FEATURE_IO_H_

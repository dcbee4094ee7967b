// signal/feature-io.cc

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

#include "signal/feature-io.h"

#include <fstream>

#include "base/file-util.h"

namespace vqvc {

void WriteFeatures(const FeatureSeq &feats, std::ostream &os) {
  os.write("CRNK", 4);
  WriteU8(os, kFeatureFileVersion);
  WriteU8(os, static_cast<uint8_t>(feats.kind));
  WriteU32(os, static_cast<uint32_t>(feats.data.rows()));
  WriteU32(os, static_cast<uint32_t>(feats.data.cols()));
  for (Eigen::Index r = 0; r < feats.data.rows(); r++)
    for (Eigen::Index c = 0; c < feats.data.cols(); c++)
      WriteF32(os, static_cast<float>(feats.data(r, c)));
}

void WriteFeatures(const FeatureSeq &feats, const std::string &path) {
  AtomicWrite(path, [&](std::ostream &os) { WriteFeatures(feats, os); });
}

FeatureSeq ReadFeatures(std::istream &is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::string(magic, 4) != "CRNK")
    throw Error("feature file: bad magic");
  uint8_t version = ReadU8(is);
  if (version != kFeatureFileVersion)
    throw Error(fmt::format("feature file: unsupported version {}", version));
  uint8_t kind = ReadU8(is);
  if (kind > static_cast<uint8_t>(FeatureKind::kF0))
    throw Error(fmt::format("feature file: unknown kind code {}", kind));
  uint32_t rows = ReadU32(is), cols = ReadU32(is);
  FeatureSeq feats;
  feats.kind = static_cast<FeatureKind>(kind);
  feats.data.resize(rows, cols);
  std::vector<float> buf(static_cast<size_t>(rows) * cols);
  is.read(reinterpret_cast<char *>(buf.data()), buf.size() * sizeof(float));
  if (!is) throw Error("feature file: truncated payload");
  for (uint32_t r = 0; r < rows; r++)
    for (uint32_t c = 0; c < cols; c++)
      feats.data(r, c) = buf[static_cast<size_t>(r) * cols + c];
  return feats;
}

FeatureSeq ReadFeatures(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  try {
    return ReadFeatures(is);
  } catch (const Error &e) {
    throw Error(path + ": " + e.what());
  }
}

FeatureSeq F0ToFeatures(const F0Contour &f0) {
  FeatureSeq feats;
  feats.kind = FeatureKind::kF0;
  feats.data.resize(f0.NumFrames(), 1);
  for (int t = 0; t < f0.NumFrames(); t++)
    feats.data(t, 0) = f0.voiced[t] ? f0.f0_hz[t] : 0.0;
  return feats;
}

F0Contour FeaturesToF0(const FeatureSeq &feats) {
  if (feats.kind != FeatureKind::kF0 || feats.Dim() != 1)
    throw Error("feature file does not hold an F0 contour");
  F0Contour f0;
  f0.f0_hz.resize(feats.NumFrames());
  f0.voiced.resize(feats.NumFrames());
  for (int t = 0; t < feats.NumFrames(); t++) {
    f0.f0_hz[t] = feats.data(t, 0) > 0.0 ? feats.data(t, 0) : 0.0;
    f0.voiced[t] = f0.f0_hz[t] > 0.0;
  }
  return f0;
}

}  // namespace vqvc

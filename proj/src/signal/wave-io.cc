// signal/wave-io.cc

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

#include "signal/wave-io.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "base/file-util.h"

namespace vqvc {

namespace {

std::string ReadTag(std::istream &is) {
  char tag[4];
  is.read(tag, 4);
  if (!is) throw Error("wav: truncated stream while reading chunk id");
  return std::string(tag, 4);
}

}  // namespace

Waveform ReadWave(std::istream &is) {
  if (ReadTag(is) != "RIFF") throw Error("wav: RIFF chunk missing");
  ReadU32(is);  // riff size, not trusted
  if (ReadTag(is) != "WAVE") throw Error("wav: RIFF chunk is not of type WAVE");

  bool have_fmt = false;
  int sample_rate = 0;
  while (true) {
    std::string id = ReadTag(is);
    uint32_t size = ReadU32(is);
    if (id == "fmt ") {
      if (size < 16) throw Error("wav: fmt chunk too small");
      uint16_t format = ReadU16(is);
      uint16_t channels = ReadU16(is);
      uint32_t rate = ReadU32(is);
      ReadU32(is);  // byte rate
      ReadU16(is);  // block align
      uint16_t bits = ReadU16(is);
      is.ignore(size - 16 + (size & 1));
      if (format != 1)
        throw Error(fmt::format(
            "wav: fmt chunk has format tag {} (only PCM = 1 is supported)",
            format));
      if (channels != 1)
        throw Error(fmt::format(
            "wav: fmt chunk has {} channels (only mono is supported)",
            channels));
      if (bits != 16)
        throw Error(fmt::format(
            "wav: fmt chunk has {} bits per sample (only 16 is supported)",
            bits));
      if (rate == 0) throw Error("wav: fmt chunk has zero sample rate");
      sample_rate = static_cast<int>(rate);
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw Error("wav: data chunk precedes fmt chunk");
      if (size % 2 != 0) throw Error("wav: data chunk has odd byte count");
      Waveform wav;
      wav.sample_rate_hz = sample_rate;
      std::vector<int16_t> pcm(size / 2);
      is.read(reinterpret_cast<char *>(pcm.data()), size);
      if (!is) throw Error("wav: data chunk truncated");
      wav.samples.resize(pcm.size());
      for (size_t i = 0; i < pcm.size(); i++)
        wav.samples[i] = pcm[i] / 32768.0;
      return wav;
    } else {
      is.ignore(size + (size & 1));
      if (!is) throw Error("wav: truncated chunk '" + id + "'");
    }
  }
}

Waveform ReadWave(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  try {
    return ReadWave(is);
  } catch (const Error &e) {
    throw Error(path + ": " + e.what());
  }
}

void WriteWave(const Waveform &wav, std::ostream &os) {
  uint32_t data_bytes = static_cast<uint32_t>(wav.samples.size() * 2);
  os.write("RIFF", 4);
  WriteU32(os, 36 + data_bytes);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  WriteU32(os, 16);
  WriteU16(os, 1);
  WriteU16(os, 1);
  WriteU32(os, static_cast<uint32_t>(wav.sample_rate_hz));
  WriteU32(os, static_cast<uint32_t>(wav.sample_rate_hz) * 2);
  WriteU16(os, 2);
  WriteU16(os, 16);
  os.write("data", 4);
  WriteU32(os, data_bytes);
  std::vector<int16_t> pcm(wav.samples.size());
  for (size_t i = 0; i < pcm.size(); i++) {
    double s = std::clamp(wav.samples[i], -1.0, 1.0);
    pcm[i] = static_cast<int16_t>(
        std::clamp(std::lround(s * 32768.0), -32768L, 32767L));
  }
  os.write(reinterpret_cast<const char *>(pcm.data()), data_bytes);
}

void WriteWave(const Waveform &wav, const std::string &path) {
  AtomicWrite(path, [&](std::ostream &os) { WriteWave(wav, os); });
}

}  // namespace vqvc

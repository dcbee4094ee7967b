// signal/wave-io.h

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

#ifndef VQVC_SIGNAL_WAVE_IO_H_
#define VQVC_SIGNAL_WAVE_IO_H_

#include <istream>
#include <ostream>
#include <string>

#include "signal/signal-types.h"

namespace vqvc {

// Only RIFF/WAVE, 16-bit PCM, mono is accepted.  Anything else is rejected
// with an Error that names the chunk that was found wanting.
Waveform ReadWave(std::istream &is);
Waveform ReadWave(const std::string &path);

// Samples are clipped to [-1, 1] and quantized to 16 bits.  The file version
// goes through a temporary file and a rename.
void WriteWave(const Waveform &wav, std::ostream &os);
void WriteWave(const Waveform &wav, const std::string &path);

}  // namespace vqvc

#endif  // VQVC_SIGNAL_WAVE_IO_H_

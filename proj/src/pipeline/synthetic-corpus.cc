// pipeline/synthetic-corpus.cc

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

#include "pipeline/synthetic-corpus.h"

#include <cmath>
#include <filesystem>
#include <random>

#include "signal/wave-io.h"

namespace vqvc {

namespace {

struct Vowel {
  double f1, f2, f3;
};

const Vowel kVowels[] = {{730, 1090, 2440}, {270, 2290, 3010}, {300, 870, 2240},
                         {530, 1840, 2480}, {570, 840, 2410},  {660, 1720, 2410}};
const double kBandwidths[3] = {90.0, 120.0, 180.0};

struct Segment {
  int start, end;  // samples
  bool silent;
  Vowel target;
};

struct TextPlan {
  int num_samples = 0;
  std::vector<Segment> segments;
  double f0_rate, f0_phase, f0_depth;
};

TextPlan PlanText(int text_index, const SyntheticCorpusOptions &opts) {
  std::mt19937_64 rng(MixSeed(opts.seed, StableHash(SyntheticTextId(text_index))));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int sr = opts.sample_rate_hz;
  TextPlan p;
  const int total = static_cast<int>(sr * (1.0 + u(rng)));
  int pos = static_cast<int>(0.05 * sr);
  p.segments.push_back({0, pos, true, {}});
  const int tail = static_cast<int>(0.05 * sr);
  int phones_since_pause = 0;
  while (pos < total - tail) {
    bool pause = phones_since_pause >= 3 && u(rng) < 0.35;
    int len = pause ? static_cast<int>(sr * (0.06 + 0.06 * u(rng)))
                    : static_cast<int>(sr * (0.08 + 0.12 * u(rng)));
    len = std::min(len, total - tail - pos);
    Segment s{pos, pos + len, pause, kVowels[rng() % 6]};
    p.segments.push_back(s);
    phones_since_pause = pause ? 0 : phones_since_pause + 1;
    pos += len;
  }
  p.segments.push_back({pos, total, true, {}});
  p.num_samples = total;
  p.f0_rate = 1.0 + 2.0 * u(rng);
  p.f0_phase = 2.0 * M_PI * u(rng);
  p.f0_depth = 0.06 + 0.08 * u(rng);
  return p;
}

double Resonance(double f, double center, double bw) {
  double x = (f - center) / bw;
  return 1.0 / (1.0 + x * x);
}

}  // namespace

std::string SyntheticTextId(int text_index) {
  return fmt::format("t{:03d}", text_index);
}

SyntheticSpeaker SyntheticSpeakerFor(int index) {
  static const double f0[4] = {120.0, 170.0, 220.0, 280.0};
  static const double tilt[4] = {-6.0, -9.0, -4.0, -11.0};
  static const double scale[4] = {0.92, 1.0, 1.1, 1.2};
  int k = index % 4, cycle = index / 4;
  return {fmt::format("spk{}", index + 1), f0[k] * (1.0 + 0.03 * cycle), tilt[k],
          scale[k]};
}

Waveform SynthesizeUtterance(const SyntheticSpeaker &spk, int text_index,
                             const SyntheticCorpusOptions &opts) {
  TextPlan plan = PlanText(text_index, opts);
  const int sr = opts.sample_rate_hz;
  const double nyq_limit = std::min(7500.0, 0.45 * sr);
  const int block = 64;               // harmonic amplitudes refreshed per block
  const int ramp = sr / 50;           // 20 ms onset / offset
  const int glide = sr * 3 / 100;     // 30 ms formant transition
  Waveform wav;
  wav.sample_rate_hz = sr;
  wav.samples.assign(plan.num_samples, 0.0);

  double phase = 0.0;
  Vowel prev = plan.segments.size() > 1 ? plan.segments[1].target : kVowels[0];
  std::vector<double> amps;
  for (const Segment &seg : plan.segments) {
    if (seg.silent) {
      phase = 0.0;
      continue;
    }
    const int len = seg.end - seg.start;
    for (int n0 = 0; n0 < len; n0 += block) {
      int mid = seg.start + n0;
      double tt = double(mid) / plan.num_samples;
      double f0 = spk.base_f0_hz *
                  (1.0 + plan.f0_depth * std::sin(2.0 * M_PI * plan.f0_rate * tt +
                                                  plan.f0_phase) -
                   0.1 * tt);
      double g = std::min(1.0, double(n0) / glide);
      double fm[3] = {prev.f1 + g * (seg.target.f1 - prev.f1),
                      prev.f2 + g * (seg.target.f2 - prev.f2),
                      prev.f3 + g * (seg.target.f3 - prev.f3)};
      int nh = static_cast<int>(nyq_limit / f0);
      amps.assign(nh, 0.0);
      for (int h = 1; h <= nh; h++) {
        double f = h * f0;
        double env = 0.02;
        for (int i = 0; i < 3; i++)
          env += Resonance(f, fm[i] * spk.formant_scale, kBandwidths[i]) / (i + 1);
        amps[h - 1] = env * std::pow(10.0, spk.tilt_db_per_octave *
                                               std::log2(f / 100.0) / 20.0);
      }
      int n1 = std::min(len, n0 + block);
      for (int n = n0; n < n1; n++) {
        double env = std::min({1.0, double(n + 1) / ramp, double(len - n) / ramp});
        double s = 0.0;
        for (int h = 1; h <= nh; h++) s += amps[h - 1] * std::sin(h * phase);
        wav.samples[seg.start + n] = env * s;
        phase += 2.0 * M_PI * f0 / sr;
        if (phase > 2.0 * M_PI * 1e4) phase = std::fmod(phase, 2.0 * M_PI);
      }
    }
    prev = seg.target;
  }
  double peak = 0.0;
  for (double s : wav.samples) peak = std::max(peak, std::abs(s));
  if (peak > 0.0)
    for (double &s : wav.samples) s *= 0.5 / peak;
  return wav;
}

CorpusManifest GenerateSyntheticCorpus(const std::string &out_dir,
                                       const SyntheticCorpusOptions &opts) {
  if (opts.n_speakers < 1 || opts.utts_per_speaker < 1)
    throw ConfigError("synth-corpus: need at least one speaker and utterance");
  CorpusManifest m;
  for (int s = 0; s < opts.n_speakers; s++) {
    SyntheticSpeaker spk = SyntheticSpeakerFor(s);
    std::filesystem::create_directories(out_dir + "/wav/" + spk.name);
    for (int t = 0; t < opts.utts_per_speaker; t++) {
      std::string text = SyntheticTextId(t);
      std::string utt = spk.name + "_" + text;
      std::string rel = "wav/" + spk.name + "/" + utt + ".wav";
      Waveform w = SynthesizeUtterance(spk, t, opts);
      WriteWave(w, out_dir + "/" + rel);
      m.utts.push_back({spk.name, utt, text, rel,
                        double(w.samples.size()) / w.sample_rate_hz});
    }
  }
  WriteManifest(m, out_dir);
  return m;
}

}  // namespace vqvc

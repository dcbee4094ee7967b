// signal/pitch.cc

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

#include "signal/pitch.h"

#include <cmath>

#include "signal/stft.h"

namespace vqvc {

namespace {
constexpr double kStdFloor = 1e-8;
}

F0Contour ExtractF0(const Waveform &wav, const F0Options &f0_opts,
                    const StftOptions &stft_opts) {
  if (!(f0_opts.fmin > 0.0 && f0_opts.fmin < f0_opts.fmax))
    throw Error(fmt::format("f0: need 0 < fmin < fmax (got {}, {})",
                            f0_opts.fmin, f0_opts.fmax));
  stft_opts.Check();
  if (wav.samples.empty()) throw Error("f0: empty waveform");
  const int len = static_cast<int>(wav.samples.size());
  const int width = stft_opts.win_size;
  const int pad = width / 2;
  const int num_frames = NumStftFrames(len, stft_opts);
  const double sr = wav.sample_rate_hz;
  const int lag_min = std::max(2, static_cast<int>(std::floor(sr / f0_opts.fmax)));
  const int lag_max = std::min(width / 2, static_cast<int>(std::ceil(sr / f0_opts.fmin)));
  if (lag_min + 1 >= lag_max)
    throw Error("f0: search range does not fit in the analysis window");

  int fft_size = 1;
  while (fft_size < 2 * width) fft_size *= 2;
  RealFft fft(fft_size);
  std::vector<double> buf(fft_size, 0.0), acf(fft_size);
  std::vector<std::complex<double>> bins(fft_size / 2 + 1);
  std::vector<double> prefix(width + 1);
  std::vector<double> r(lag_max + 2, 0.0);

  F0Contour out;
  out.f0_hz.assign(num_frames, 0.0);
  out.voiced.assign(num_frames, false);
  for (int t = 0; t < num_frames; t++) {
    int start = t * stft_opts.hop_size - pad;
    double mean = 0.0;
    for (int n = 0; n < width; n++) {
      buf[n] = wav.samples[ReflectIndex(start + n, len)];
      mean += buf[n];
    }
    mean /= width;
    double energy = 0.0;
    prefix[0] = 0.0;
    for (int n = 0; n < width; n++) {
      energy += buf[n] * buf[n];
      buf[n] -= mean;
      prefix[n + 1] = prefix[n] + buf[n] * buf[n];
    }
    std::fill(buf.begin() + width, buf.end(), 0.0);
    double rms = std::sqrt(energy / width);
    if (rms < f0_opts.rms_threshold) continue;

    fft.Forward(buf.data(), bins.data());
    for (auto &b : bins) b = std::norm(b);
    fft.Inverse(bins.data(), acf.data());

    double best = -1.0;
    for (int lag = lag_min - 1; lag <= lag_max + 1; lag++) {
      double e0 = prefix[width - lag];
      double e1 = prefix[width] - prefix[lag];
      double den = std::sqrt(e0 * e1);
      r[lag] = den > 0.0 ? acf[lag] / den : 0.0;
      if (lag >= lag_min && lag <= lag_max) best = std::max(best, r[lag]);
    }
    if (best < f0_opts.voicing_threshold) continue;
    // The smallest-lag local maximum close to the global one guards
    // against picking a subharmonic.
    int chosen = -1;
    for (int lag = lag_min; lag <= lag_max; lag++) {
      if (r[lag] >= r[lag - 1] && r[lag] >= r[lag + 1] && r[lag] >= 0.9 * best) {
        chosen = lag;
        break;
      }
    }
    if (chosen < 0) continue;
    double a = r[chosen - 1], b = r[chosen], c = r[chosen + 1];
    double denom = a - 2.0 * b + c;
    double shift = denom < 0.0 ? 0.5 * (a - c) / denom : 0.0;
    double f0 = sr / (chosen + std::clamp(shift, -0.5, 0.5));
    if (r[chosen] < f0_opts.voicing_threshold || f0 < f0_opts.fmin ||
        f0 > f0_opts.fmax)
      continue;
    out.f0_hz[t] = f0;
    out.voiced[t] = true;
  }
  return out;
}

std::vector<double> InterpolateLogF0(const F0Contour &f0) {
  const int n = f0.NumFrames();
  std::vector<double> lf0(n, 0.0);
  int prev = -1;
  for (int t = 0; t < n; t++) {
    if (!f0.voiced[t]) continue;
    lf0[t] = std::log(f0.f0_hz[t]);
    if (prev < 0) {
      for (int s = 0; s < t; s++) lf0[s] = lf0[t];
    } else {
      for (int s = prev + 1; s < t; s++) {
        double w = static_cast<double>(s - prev) / (t - prev);
        lf0[s] = (1.0 - w) * lf0[prev] + w * lf0[t];
      }
    }
    prev = t;
  }
  if (prev >= 0)
    for (int s = prev + 1; s < n; s++) lf0[s] = lf0[prev];
  return lf0;
}

ContinuousF0 ContinuousLogF0(const F0Contour &f0, const SpeakerStats &stats) {
  ContinuousF0 out;
  const int n = f0.NumFrames();
  out.uv.assign(n, 0.0);
  bool any_voiced = false;
  for (int t = 0; t < n; t++) {
    out.uv[t] = f0.voiced[t] ? 1.0 : 0.0;
    any_voiced = any_voiced || f0.voiced[t];
  }
  if (!any_voiced) {
    out.all_unvoiced = true;
    out.lcf0.assign(n, 0.0);
    spdlog::warn("continuous f0: utterance has no voiced frame; lcf0 set to 0");
    return out;
  }
  out.lcf0 = InterpolateLogF0(f0);
  for (double &v : out.lcf0) v = (v - stats.lcf0_mean) / stats.lcf0_std;
  return out;
}

SpeakerStats ComputeSpeakerStats(int speaker_index, const std::string &speaker_name,
                                 const std::vector<UtteranceFeatures> &utts) {
  if (utts.empty())
    throw Error("speaker stats: speaker '" + speaker_name + "' has no utterances");
  const int dim = utts[0].log_mel.Dim();
  SpeakerStats stats;
  stats.speaker_index = speaker_index;
  // Two passes so that constant inputs give an exactly zero variance.
  std::vector<double> sum(dim, 0.0);
  double frames = 0.0, lf0_sum = 0.0, voiced = 0.0;
  for (const auto &u : utts) {
    if (u.log_mel.Dim() != dim)
      throw Error("speaker stats: inconsistent feature width for '" + speaker_name + "'");
    for (int t = 0; t < u.log_mel.NumFrames(); t++) {
      for (int d = 0; d < dim; d++) sum[d] += u.log_mel.data(t, d);
      frames += 1.0;
    }
    for (int t = 0; t < u.f0.NumFrames(); t++) {
      if (!u.f0.voiced[t]) continue;
      lf0_sum += std::log(u.f0.f0_hz[t]);
      voiced += 1.0;
    }
  }
  if (voiced == 0.0)
    throw Error("speaker stats: speaker '" + speaker_name + "' has no voiced frames");
  if (frames == 0.0)
    throw Error("speaker stats: speaker '" + speaker_name + "' has no frames");
  stats.feat_mean.resize(dim);
  for (int d = 0; d < dim; d++) stats.feat_mean[d] = sum[d] / frames;
  stats.lcf0_mean = lf0_sum / voiced;

  std::vector<double> sq(dim, 0.0);
  double lf0_sq = 0.0;
  for (const auto &u : utts) {
    for (int t = 0; t < u.log_mel.NumFrames(); t++)
      for (int d = 0; d < dim; d++) {
        double v = u.log_mel.data(t, d) - stats.feat_mean[d];
        sq[d] += v * v;
      }
    for (int t = 0; t < u.f0.NumFrames(); t++) {
      if (!u.f0.voiced[t]) continue;
      double l = std::log(u.f0.f0_hz[t]) - stats.lcf0_mean;
      lf0_sq += l * l;
    }
  }
  stats.feat_std.resize(dim);
  for (int d = 0; d < dim; d++)
    stats.feat_std[d] = std::max(std::sqrt(sq[d] / frames), kStdFloor);
  stats.lcf0_std = std::max(std::sqrt(lf0_sq / voiced), kStdFloor);
  return stats;
}

RowMatrix NormalizeFeatures(const RowMatrix &feats, const SpeakerStats &stats) {
  if (feats.cols() != static_cast<Eigen::Index>(stats.feat_mean.size()))
    throw Error("normalize: feature width does not match speaker stats");
  RowMatrix out(feats.rows(), feats.cols());
  for (Eigen::Index t = 0; t < feats.rows(); t++)
    for (Eigen::Index d = 0; d < feats.cols(); d++)
      out(t, d) = (feats(t, d) - stats.feat_mean[d]) / stats.feat_std[d];
  return out;
}

RowMatrix DenormalizeFeatures(const RowMatrix &feats, const SpeakerStats &stats) {
  if (feats.cols() != static_cast<Eigen::Index>(stats.feat_mean.size()))
    throw Error("denormalize: feature width does not match speaker stats");
  RowMatrix out(feats.rows(), feats.cols());
  for (Eigen::Index t = 0; t < feats.rows(); t++)
    for (Eigen::Index d = 0; d < feats.cols(); d++)
      out(t, d) = feats(t, d) * stats.feat_std[d] + stats.feat_mean[d];
  return out;
}

}  // namespace vqvc

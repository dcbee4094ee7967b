// losses/stft-loss.cc

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

#include "losses/stft-loss.h"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "signal/stft.h"

namespace vqvc {

using ag::Value;

namespace {

constexpr double kPowerFloor = 1e-7;

struct DftPair {
  Value re, im;  // [T, frames * bins]
};

// Framing, windowing and the real DFT folded into one constant matrix per
// (length, resolution).
const DftPair &FramedDft(int length, const StftResolution &r) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int, int>, DftPair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(length, r.fft_size, r.hop_size, r.win_size);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const int frames = 1 + (length - r.win_size) / r.hop_size;
  const int bins = r.fft_size / 2 + 1;
  const int cols = frames * bins;
  std::vector<double> window = HannWindow(r.win_size);
  std::vector<double> re(size_t(length) * cols, 0.0), im(re.size(), 0.0);
  for (int f = 0; f < frames; f++) {
    for (int n = 0; n < r.win_size; n++) {
      int t = f * r.hop_size + n;
      for (int k = 0; k < bins; k++) {
        double ang = 2.0 * M_PI * double((int64_t(k) * n) % r.fft_size) / r.fft_size;
        size_t idx = size_t(t) * cols + size_t(f) * bins + k;
        re[idx] = window[n] * std::cos(ang);
        im[idx] = -window[n] * std::sin(ang);
      }
    }
  }
  DftPair p{Value::FromData({length, cols}, std::move(re)),
            Value::FromData({length, cols}, std::move(im))};
  return cache.emplace(key, std::move(p)).first->second;
}

Value Magnitudes(const Value &signals, const DftPair &dft) {
  return ag::Magnitude(ag::MatMul(signals, dft.re), ag::MatMul(signals, dft.im),
                       kPowerFloor);
}

}  // namespace

std::vector<StftResolution> DefaultStftResolutions() {
  return {{64, 16, 32}, {128, 32, 64}, {256, 64, 128}};
}

int MaxStftWindow(const std::vector<StftResolution> &resolutions) {
  int m = 0;
  for (const auto &r : resolutions) m = std::max(m, r.win_size);
  return m;
}

Value MultiResStftLoss(const Value &x, const Value &x_hat,
                       const std::vector<StftResolution> &resolutions,
                       std::vector<StftLossTerms> *terms) {
  if (x.shape() != x_hat.shape())
    throw Error(fmt::format("stft loss: shape mismatch {} vs {}",
                            ag::ShapeString(x.shape()),
                            ag::ShapeString(x_hat.shape())));
  if (x.rank() != 2 && x.rank() != 3)
    throw Error("stft loss: expected [T, C] or [B, T, C], got " +
                ag::ShapeString(x.shape()));
  const int length = x.dim(x.rank() - 2);
  // [..., T, C] -> [N, T] with one row per (item, channel).
  const int signals = static_cast<int>(x.numel() / length);
  Value xs = ag::Reshape(ag::SwapLastAxes(x), {signals, length});
  Value ys = ag::Reshape(ag::SwapLastAxes(x_hat), {signals, length});

  if (terms) terms->clear();
  Value total;
  int computed = 0;
  for (const StftResolution &r : resolutions) {
    if (r.hop_size < 1 || r.win_size > r.fft_size || r.win_size < 1)
      throw Error(fmt::format("stft loss: bad resolution ({}, {}, {})", r.fft_size,
                              r.hop_size, r.win_size));
    StftLossTerms t;
    t.res = r;
    if (length < r.win_size) {
      spdlog::warn("stft loss: {} frames < window {}; resolution skipped", length,
                   r.win_size);
      if (terms) terms->push_back(t);
      continue;
    }
    const DftPair &dft = FramedDft(length, r);
    Value m = Magnitudes(xs, dft);
    Value mh = Magnitudes(ys, dft);
    t.spectral_convergence =
        ag::Div(ag::Sqrt(ag::Sum(ag::Square(ag::Sub(m, mh)))),
                ag::Sqrt(ag::Sum(ag::Square(m))));
    t.log_magnitude = ag::Mean(ag::Abs(ag::Sub(ag::Log(m), ag::Log(mh))));
    t.computed = true;
    Value term = ag::Add(t.spectral_convergence, t.log_magnitude);
    total = total.defined() ? ag::Add(total, term) : term;
    computed++;
    if (terms) terms->push_back(t);
  }
  if (computed == 0) {
    spdlog::warn("stft loss: no resolution fits {} frames; term is 0", length);
    return Value::Scalar(0.0);
  }
  return ag::Scale(total, 1.0 / computed);
}

}  // namespace vqvc

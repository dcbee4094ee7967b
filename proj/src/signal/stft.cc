// signal/stft.cc

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

#include "signal/stft.h"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace vqvc {

namespace {

struct PlanPair {
  fftw_plan forward;
  fftw_plan inverse;
};

std::mutex &PlanMutex() {
  static std::mutex m;
  return m;
}

// Plans are created once per size against aligned buffers and executed later
// through the new-array interface on other aligned buffers.
PlanPair GetPlans(int n) {
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(PlanMutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  double *r = fftw_alloc_real(n);
  fftw_complex *c = fftw_alloc_complex(n / 2 + 1);
  PlanPair p;
  p.forward = fftw_plan_dft_r2c_1d(n, r, c, FFTW_ESTIMATE);
  p.inverse = fftw_plan_dft_c2r_1d(n, c, r, FFTW_ESTIMATE);
  fftw_free(r);
  fftw_free(c);
  if (!p.forward || !p.inverse)
    throw Error(fmt::format("fftw: cannot plan transform of size {}", n));
  cache.emplace(n, p);
  return p;
}

}  // namespace

RealFft::RealFft(int n) : n_(n) {
  if (n <= 0) throw Error("fft size must be positive");
  PlanPair p = GetPlans(n);
  forward_plan_ = p.forward;
  inverse_plan_ = p.inverse;
  real_ = fftw_alloc_real(n);
  complex_ = fftw_alloc_complex(n / 2 + 1);
}

RealFft::~RealFft() {
  fftw_free(real_);
  fftw_free(complex_);
}

void RealFft::Forward(const double *in, std::complex<double> *out) {
  std::copy(in, in + n_, real_);
  auto *c = static_cast<fftw_complex *>(complex_);
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), real_, c);
  for (int k = 0; k <= n_ / 2; k++) out[k] = {c[k][0], c[k][1]};
}

void RealFft::Inverse(const std::complex<double> *in, double *out) {
  auto *c = static_cast<fftw_complex *>(complex_);
  for (int k = 0; k <= n_ / 2; k++) {
    c[k][0] = in[k].real();
    c[k][1] = in[k].imag();
  }
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), c, real_);
  double scale = 1.0 / n_;
  for (int i = 0; i < n_; i++) out[i] = real_[i] * scale;
}

void StftOptions::Check() const {
  if (hop_size <= 0) throw Error("stft: hop_size must be positive");
  if (win_size <= 0 || fft_size <= 0)
    throw Error("stft: window and fft sizes must be positive");
  if (win_size > fft_size)
    throw Error(fmt::format("stft: win_size {} exceeds fft_size {}", win_size,
                            fft_size));
  if (hop_size > win_size)
    throw Error(fmt::format("stft: hop_size {} exceeds win_size {}", hop_size,
                            win_size));
}

std::vector<double> HannWindow(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; i++)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
  return w;
}

int ReflectIndex(int i, int n) {
  if (n == 1) return 0;
  int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

int NumStftFrames(int num_samples, const StftOptions &opts) {
  return (num_samples + opts.hop_size - 1) / opts.hop_size;
}

ComplexSpectrogram ComputeStft(const Waveform &wav, const StftOptions &opts) {
  opts.Check();
  if (wav.samples.empty()) throw Error("stft: empty waveform");
  const int len = static_cast<int>(wav.samples.size());
  const int num_frames = NumStftFrames(len, opts);
  const int pad = opts.win_size / 2;
  const int num_bins = opts.fft_size / 2 + 1;
  std::vector<double> window = HannWindow(opts.win_size);

  ComplexSpectrogram spec;
  spec.opts = opts;
  spec.bins.resize(num_frames, num_bins);
  RealFft fft(opts.fft_size);
  std::vector<double> frame(opts.fft_size, 0.0);
  for (int t = 0; t < num_frames; t++) {
    int start = t * opts.hop_size - pad;
    for (int n = 0; n < opts.win_size; n++)
      frame[n] = window[n] * wav.samples[ReflectIndex(start + n, len)];
    fft.Forward(frame.data(), spec.bins.row(t).data());
  }
  return spec;
}

Spectrogram ComputeMagnitudeSpectrogram(const Waveform &wav,
                                        const StftOptions &opts) {
  ComplexSpectrogram c = ComputeStft(wav, opts);
  Spectrogram s;
  s.opts = opts;
  s.magnitude = c.bins.cwiseAbs();
  return s;
}

Waveform InverseStft(const ComplexSpectrogram &spec, int num_samples,
                     int sample_rate_hz) {
  const StftOptions &opts = spec.opts;
  opts.Check();
  if (spec.bins.cols() != opts.fft_size / 2 + 1)
    throw Error("istft: bin count does not match fft_size");
  const int num_frames = spec.NumFrames();
  const int pad = opts.win_size / 2;
  const int padded_len = (num_frames - 1) * opts.hop_size + opts.win_size;
  std::vector<double> window = HannWindow(opts.win_size);
  std::vector<double> acc(std::max(padded_len, 0), 0.0),
      wsum(std::max(padded_len, 0), 0.0);
  RealFft fft(opts.fft_size);
  std::vector<double> frame(opts.fft_size);
  for (int t = 0; t < num_frames; t++) {
    fft.Inverse(spec.bins.row(t).data(), frame.data());
    int start = t * opts.hop_size;
    for (int n = 0; n < opts.win_size; n++) {
      acc[start + n] += window[n] * frame[n];
      wsum[start + n] += window[n] * window[n];
    }
  }
  Waveform wav;
  wav.sample_rate_hz = sample_rate_hz;
  wav.samples.assign(num_samples, 0.0);
  for (int i = 0; i < num_samples; i++) {
    int j = i + pad;
    if (j < padded_len && wsum[j] > 1e-10) wav.samples[i] = acc[j] / wsum[j];
  }
  return wav;
}

double SpectralConvergence(const RowMatrix &est, const RowMatrix &ref) {
  if (est.rows() != ref.rows() || est.cols() != ref.cols())
    throw Error("spectral convergence: shape mismatch");
  double num = (est - ref).norm();
  double den = ref.norm();
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

GriffinLimResult GriffinLim(const Spectrogram &spec,
                            const GriffinLimOptions &gl_opts,
                            int sample_rate_hz, int num_samples) {
  const StftOptions &opts = spec.opts;
  opts.Check();
  if (gl_opts.n_iters < 1) throw Error("griffin-lim: n_iters must be >= 1");
  if (spec.magnitude.cols() != opts.fft_size / 2 + 1)
    throw Error(fmt::format(
        "griffin-lim: spectrogram has {} bins but fft_size {} implies {}",
        spec.magnitude.cols(), opts.fft_size, opts.fft_size / 2 + 1));
  const int num_frames = spec.NumFrames();
  if (num_samples < 0) num_samples = num_frames * opts.hop_size;
  if (NumStftFrames(num_samples, opts) != num_frames)
    throw Error("griffin-lim: num_samples inconsistent with frame count");

  ComplexSpectrogram estimate;
  estimate.opts = opts;
  estimate.bins = spec.magnitude.cast<std::complex<double>>();
  if (gl_opts.random_phase_init) {
    Eigen::Index n = estimate.bins.size();
    uint64_t state = gl_opts.seed;
    for (Eigen::Index i = 0; i < n; i++) {
      state = MixSeed(state, static_cast<uint64_t>(i));
      double phase = 2.0 * std::numbers::pi * (state >> 11) * 0x1.0p-53;
      estimate.bins.data()[i] *= std::polar(1.0, phase);
    }
  }

  GriffinLimResult result;
  result.convergence.reserve(gl_opts.n_iters);
  const double alpha = gl_opts.momentum / (1.0 + gl_opts.momentum);
  ComplexRowMatrix previous = ComplexRowMatrix::Zero(estimate.bins.rows(),
                                                     estimate.bins.cols());
  for (int it = 0; it < gl_opts.n_iters; it++) {
    result.wav = InverseStft(estimate, num_samples, sample_rate_hz);
    ComplexSpectrogram rebuilt = ComputeStft(result.wav, opts);
    RowMatrix rebuilt_mag = rebuilt.bins.cwiseAbs();
    result.convergence.push_back(
        SpectralConvergence(rebuilt_mag, spec.magnitude));
    if (it > 0 && result.convergence[it] > result.convergence[it - 1] + 1e-12)
      spdlog::debug("griffin-lim: convergence rose at iteration {} ({} -> {})",
                    it, result.convergence[it - 1], result.convergence[it]);
    // Phase of the momentum-extrapolated projection (fast Griffin-Lim).
    for (Eigen::Index i = 0; i < estimate.bins.size(); i++) {
      std::complex<double> c = rebuilt.bins.data()[i] - alpha * previous.data()[i];
      double a = std::abs(c);
      std::complex<double> unit = a > 0.0 ? c / a : std::complex<double>(1.0, 0.0);
      estimate.bins.data()[i] = spec.magnitude.data()[i] * unit;
    }
    previous = std::move(rebuilt.bins);
  }
  return result;
}

}  // namespace vqvc

// Copyright 2026 The adcue Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adcue/audio/dsp.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "adcue/error.h"

namespace adcue::audio {

namespace {

void RequireRange(double v, double lo, double hi, const char* what) {
  if (!(v >= lo && v <= hi)) {
    throw ConfigError(std::string(what) + " " + std::to_string(v) + " outside [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

// Kaiser-windowed sinc sampled finely enough that linear interpolation
// between table entries is well below PCM16 resolution.
class SincTable {
 public:
  static constexpr int kSteps = 1024;  // per zero crossing

  SincTable() : table_(kSincZeroCrossings * kSteps + 2) {
    const double i0_beta = std::cyl_bessel_i(0.0, kKaiserBeta);
    for (size_t i = 0; i < table_.size(); ++i) {
      const double t = static_cast<double>(i) / kSteps;
      const double x = t / kSincZeroCrossings;
      if (x >= 1.0) {
        table_[i] = 0.0;
        continue;
      }
      const double sinc = t == 0.0 ? 1.0 : std::sin(std::numbers::pi * t) / (std::numbers::pi * t);
      table_[i] = sinc * std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - x * x)) / i0_beta;
    }
  }

  // Windowed sinc at |t| zero crossings.
  double operator()(double t) const {
    t = std::abs(t) * kSteps;
    const auto i = static_cast<size_t>(t);
    if (i + 1 >= table_.size()) return 0.0;
    const double frac = t - static_cast<double>(i);
    return table_[i] + frac * (table_[i + 1] - table_[i]);
  }

 private:
  std::vector<double> table_;
};

const SincTable& Sinc() {
  static const SincTable table;
  return table;
}

// Periodic Hann, which sums to one at 50% overlap.
std::vector<double> HannWindow(size_t n) {
  std::vector<double> w(n);
  for (size_t i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(n));
  }
  return w;
}

}  // namespace

Waveform ResampleAnyFactor(const Waveform& w, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw ConfigError("resample: factor must be > 0");
  if (factor == 1.0) return w;
  const auto n_in = static_cast<long>(w.size());
  const auto n_out = static_cast<long>(std::llround(static_cast<double>(n_in) / factor));
  // Downsampling (factor > 1) lowers the cutoff to the output Nyquist.
  const double cutoff = std::min(1.0, 1.0 / factor);
  const double half_width = kSincZeroCrossings / cutoff;
  const SincTable& sinc = Sinc();

  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples.resize(static_cast<size_t>(n_out));
  for (long m = 0; m < n_out; ++m) {
    const double pos = static_cast<double>(m) * factor;
    const long lo = std::max(0L, static_cast<long>(std::ceil(pos - half_width)));
    const long hi = std::min(n_in - 1, static_cast<long>(std::floor(pos + half_width)));
    double acc = 0.0;
    for (long k = lo; k <= hi; ++k) {
      acc += w.samples[k] * sinc((pos - static_cast<double>(k)) * cutoff);
    }
    out.samples[m] = static_cast<float>(acc * cutoff);
  }
  return out;
}

Waveform Resample(const Waveform& w, double factor) {
  RequireRange(factor, 0.5, 2.0, "resample factor");
  return ResampleAnyFactor(w, factor);
}

Waveform SpeedPerturb(const Waveform& w, double rate) {
  RequireRange(rate, -0.05, 0.05, "speed rate");
  return Resample(w, 1.0 + rate);
}

Waveform TimeStretch(const Waveform& w, double ratio) {
  RequireRange(ratio, 0.9, 1.12, "time-stretch ratio");
  if (ratio == 1.0) return w;
  const double rate = w.sample_rate;
  const auto frame = static_cast<long>(std::lround(kWsolaFrameS * rate));
  const long hop_out = frame / 2;
  const double hop_in = static_cast<double>(hop_out) / ratio;
  const auto tolerance = static_cast<long>(std::lround(kWsolaToleranceS * rate));
  const auto n_in = static_cast<long>(w.size());
  const auto n_out = static_cast<long>(std::llround(static_cast<double>(n_in) * ratio));

  auto at = [&](long i) -> double {
    return i >= 0 && i < n_in ? static_cast<double>(w.samples[i]) : 0.0;
  };
  const std::vector<double> window = HannWindow(static_cast<size_t>(frame));

  // Frame m is centred on output sample m * hop_out, so every output
  // sample lies under two frames whose windows sum to one.
  std::vector<double> acc(static_cast<size_t>(n_out + 2 * frame), 0.0);
  const long offset = frame;  // acc index of output sample 0
  long prev_start = -frame / 2;
  const long frames = n_out / hop_out + 2;
  for (long m = 0; m < frames; ++m) {
    const long out_start = m * hop_out - frame / 2;
    const long ideal = std::lround(static_cast<double>(m) * hop_in) - frame / 2;
    long best = ideal;
    if (m > 0) {
      // Match the natural continuation of the previous frame.
      const long natural = prev_start + hop_out;
      double best_score = -2.0;
      for (long step = 0; step <= 2 * tolerance; ++step) {
        // 0, +1, -1, +2, -2, ... so ties prefer the smallest shift.
        const long delta = (step % 2 == 1) ? (step + 1) / 2 : -(step / 2);
        const long cand = ideal + delta;
        double dot = 0.0, energy = 0.0;
        for (long i = 0; i < frame; ++i) {
          const double c = at(cand + i);
          dot += c * at(natural + i);
          energy += c * c;
        }
        const double score = energy > 0.0 ? dot / std::sqrt(energy) : 0.0;
        if (score > best_score) {
          best_score = score;
          best = cand;
        }
      }
    }
    for (long i = 0; i < frame; ++i) {
      const long o = out_start + i + offset;
      if (o >= 0 && o < static_cast<long>(acc.size())) acc[o] += window[i] * at(best + i);
    }
    prev_start = best;
  }

  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples.resize(static_cast<size_t>(n_out));
  for (long i = 0; i < n_out; ++i) out.samples[i] = static_cast<float>(acc[i + offset]);
  return out;
}

Waveform PitchShift(const Waveform& w, double cents) {
  RequireRange(cents, -100.0, 100.0, "pitch shift (cents)");
  if (cents == 0.0) return w;
  const double f = std::exp2(cents / 1200.0);
  Waveform shifted = TimeStretch(Resample(w, f), f);
  // Resample and stretch round separately; pin the length to the input.
  shifted.samples.resize(w.size(), 0.0f);
  return shifted;
}

Waveform Dither(const Waveform& w, double amplitude, nn::SeededRng& rng) {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw ConfigError("dither amplitude must be >= 0");
  }
  if (amplitude == 0.0) return w;
  Waveform out = w;
  for (float& s : out.samples) {
    const double v = static_cast<double>(s) + amplitude * rng.Triangular();
    s = static_cast<float>(std::clamp(v, -1.0, 1.0));
  }
  return out;
}

}  // namespace adcue::audio

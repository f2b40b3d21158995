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


#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "adcue/audio/augment.h"
#include "adcue/audio/segment.h"
#include "adcue/audio/wav_io.h"
#include "adcue/error.h"
#include "fft_oracle.h"
#include "test_util.h"

namespace adcue::audio {
namespace {

using testing::Tone;

Waveform Silence(double seconds) {
  Waveform w;
  w.samples.assign(static_cast<size_t>(std::llround(seconds * kSampleRate)), 0.0f);
  return w;
}

Waveform Ramp(double seconds) {
  Waveform w = Silence(seconds);
  for (size_t i = 0; i < w.size(); ++i) w.samples[i] = static_cast<float>(i % 1000) / 1000.0f;
  return w;
}

TEST(SegmentTest, NinetySecondsGiveNineWindows) {
  const auto chunks = Segment(Ramp(90.0), SegmentSpec{});
  ASSERT_EQ(chunks.size(), 9u);
  for (size_t k = 0; k < chunks.size(); ++k) {
    EXPECT_DOUBLE_EQ(chunks[k].start_s, 7.5 * static_cast<double>(k));
    EXPECT_DOUBLE_EQ(chunks[k].duration_s, 30.0);
    EXPECT_EQ(chunks[k].wave.size(), 480000u);
  }
  // Window k starts at sample k * 120000.
  EXPECT_EQ(chunks[3].wave.samples[17], Ramp(90.0).samples[360017]);
}

TEST(SegmentTest, ShortTailIsDropped) {
  EXPECT_EQ(Segment(Ramp(33.0), SegmentSpec{}).size(), 1u);
  EXPECT_EQ(Segment(Ramp(30.0), SegmentSpec{}).size(), 1u);
}

TEST(SegmentTest, LongTailIsPadded) {
  const auto chunks = Segment(Ramp(37.0), SegmentSpec{});
  ASSERT_EQ(chunks.size(), 2u);
  EXPECT_DOUBLE_EQ(chunks[1].start_s, 7.5);
  EXPECT_DOUBLE_EQ(chunks[1].duration_s, 29.5);
  EXPECT_EQ(chunks[1].wave.size(), 480000u);
  EXPECT_EQ(chunks[1].wave.samples.back(), 0.0f);
}

TEST(SegmentTest, ShortAudioGivesOnePaddedChunk) {
  const auto chunks = Segment(Ramp(10.0), SegmentSpec{});
  ASSERT_EQ(chunks.size(), 1u);
  EXPECT_DOUBLE_EQ(chunks[0].duration_s, 10.0);
  EXPECT_EQ(chunks[0].wave.size(), 480000u);
  EXPECT_EQ(chunks[0].wave.samples[200000], 0.0f);
}

TEST(SegmentTest, CoverageProperty) {
  // Every sample of any input lies in some chunk unless it belongs to a
  // dropped tail shorter than min_tail_s.
  for (double seconds : {12.0, 30.0, 31.0, 44.0, 61.3, 95.0}) {
    const auto chunks = Segment(Silence(seconds), SegmentSpec{});
    double covered = 0.0;
    for (const auto& c : chunks) covered = std::max(covered, c.start_s + c.duration_s);
    EXPECT_LT(seconds - covered, 5.0) << seconds;
    EXPECT_LE(covered, seconds + 1e-9) << seconds;
  }
}

TEST(SegmentTest, RejectsBadSpecs) {
  EXPECT_THROW(Segment(Silence(1.0), SegmentSpec{.window_s = 0.0}), ConfigError);
  EXPECT_THROW(Segment(Silence(1.0), SegmentSpec{.hop_ratio = 1.5}), ConfigError);
}

// Canonical 44-byte header, built by hand.
std::vector<char> HandWav(int channels, int rate, const std::vector<int16_t>& pcm,
                          bool extra_chunk = false) {
  std::vector<char> b;
  auto u32 = [&](uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  auto u16 = [&](uint16_t v) {
    b.push_back(static_cast<char>(v & 0xff));
    b.push_back(static_cast<char>(v >> 8));
  };
  auto tag = [&](const char* t) { b.insert(b.end(), t, t + 4); };
  const uint32_t data_bytes = static_cast<uint32_t>(pcm.size() * 2);
  tag("RIFF");
  u32(36 + data_bytes + (extra_chunk ? 12 : 0));
  tag("WAVE");
  tag("fmt ");
  u32(16);
  u16(1);
  u16(static_cast<uint16_t>(channels));
  u32(static_cast<uint32_t>(rate));
  u32(static_cast<uint32_t>(rate * channels * 2));
  u16(static_cast<uint16_t>(channels * 2));
  u16(16);
  if (extra_chunk) {
    tag("LIST");
    u32(3);
    b.insert(b.end(), {'a', 'b', 'c', 0});  // odd size plus pad byte
  }
  tag("data");
  u32(data_bytes);
  for (int16_t s : pcm) u16(static_cast<uint16_t>(s));
  return b;
}

TEST(WavTest, RoundTripWithinOnePcmStep) {
  testing::TempDir dir;
  const Waveform w = Tone(440.0, 0.5, 0.7);
  WriteWav(w, dir / "t.wav");
  const Waveform back = ReadWav(dir / "t.wav");
  ASSERT_EQ(back.size(), w.size());
  EXPECT_EQ(back.sample_rate, 16000);
  for (size_t i = 0; i < w.size(); ++i) {
    ASSERT_LE(std::abs(back.samples[i] - w.samples[i]), std::ldexp(1.0, -15));
  }
}

TEST(WavTest, DecodesHandBuiltFileAndSkipsChunks) {
  const std::vector<int16_t> pcm = {0, 16384, -32768, 32767};
  for (bool extra : {false, true}) {
    const Waveform w = DecodeWav(HandWav(1, 16000, pcm, extra), "hand");
    ASSERT_EQ(w.size(), 4u);
    EXPECT_FLOAT_EQ(w.samples[1], 0.5f);
    EXPECT_FLOAT_EQ(w.samples[2], -1.0f);
  }
}

TEST(WavTest, EncoderMatchesHandLayout) {
  Waveform w;
  w.samples = {0.0f, 0.5f, -1.0f, 2.0f};  // last one clips
  EXPECT_EQ(EncodeWav(w), HandWav(1, 16000, {0, 16384, -32768, 32767}));
}

TEST(WavTest, StereoIsRejected) {
  try {
    DecodeWav(HandWav(2, 16000, {1, 2, 3, 4}), "stereo.wav");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("mono required"), std::string::npos);
  }
}

TEST(WavTest, OtherRatesAreResampledTo16k) {
  const Waveform tone8k = Tone(440.0, 1.0, 0.5, 8000);
  std::vector<int16_t> pcm;
  for (float s : tone8k.samples) pcm.push_back(static_cast<int16_t>(std::lround(s * 32768.0)));
  const Waveform w = DecodeWav(HandWav(1, 8000, pcm), "8k");
  EXPECT_EQ(w.sample_rate, 16000);
  EXPECT_EQ(w.size(), 16000u);
  EXPECT_NEAR(testing::PeakFrequency(w), 440.0, 0.5);
}

TEST(WavTest, RejectsMalformedInput) {
  EXPECT_THROW(DecodeWav(std::vector<char>{'R', 'I'}, "x"), DataError);
  auto b = HandWav(1, 16000, {1, 2});
  b[0] = 'X';
  EXPECT_THROW(DecodeWav(b, "x"), DataError);
  auto truncated = HandWav(1, 16000, {1, 2, 3});
  truncated.resize(truncated.size() - 2);
  EXPECT_THROW(DecodeWav(truncated, "x"), DataError);
  Waveform w8;
  w8.sample_rate = 8000;
  w8.samples = {0.0f};
  EXPECT_THROW(EncodeWav(w8), ConfigError);
  EXPECT_THROW(ReadWav("/nonexistent.wav"), DataError);
}

TEST(AugmentTest, ZeroRangesLeaveOnlyDither) {
  const Waveform w = Tone(440.0, 0.5);
  nn::SeededRng rng(1);
  AugmentDraw draw;
  EXPECT_EQ(Augment(w, {.pitch_cents = 0, .speed_rate = 0, .dither_amplitude = 0}, rng, &draw),
            w);
  EXPECT_EQ(draw.cents, 0.0);
  EXPECT_EQ(draw.rate, 0.0);
}

TEST(AugmentTest, DrawsStayInRangeAndDurationFollowsSpeed) {
  const Waveform w = Tone(440.0, 0.5);
  for (uint64_t v = 0; v < 6; ++v) {
    nn::SeededRng rng = AugmentStream(3, "spk", 0, v);
    AugmentDraw draw;
    const Waveform a = Augment(w, AugmentConfig{}, rng, &draw);
    EXPECT_LE(std::abs(draw.cents), 100.0);
    EXPECT_LE(std::abs(draw.rate), 0.05);
    const double expected = w.duration_s() / (1.0 + draw.rate);
    EXPECT_NEAR(a.duration_s(), expected, 1e-3);
    EXPECT_GE(a.duration_s(), w.duration_s() / 1.05 - 1e-3);
    EXPECT_LE(a.duration_s(), w.duration_s() / 0.95 + 1e-3);
  }
}

TEST(AugmentTest, StreamsAreDeterministicAndDistinct) {
  const Waveform w = Tone(440.0, 0.2);
  nn::SeededRng a = AugmentStream(3, "spk", 1, 0);
  nn::SeededRng b = AugmentStream(3, "spk", 1, 0);
  nn::SeededRng c = AugmentStream(3, "spk", 1, 1);
  const Waveform wa = Augment(w, AugmentConfig{}, a);
  EXPECT_EQ(wa, Augment(w, AugmentConfig{}, b));
  EXPECT_NE(wa, Augment(w, AugmentConfig{}, c));
}

TEST(AugmentTest, RejectsRangesBeyondLimits) {
  nn::SeededRng rng(0);
  const Waveform w = Tone(440.0, 0.1);
  EXPECT_THROW(Augment(w, {.pitch_cents = 150}, rng), ConfigError);
  EXPECT_THROW(Augment(w, {.speed_rate = 0.1}, rng), ConfigError);
}

}  // namespace
}  // namespace adcue::audio

// Copyright 2026 The phonia authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "phonia/audio.hpp"
#include "phonia/error.hpp"

namespace phonia {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] |
                                    (static_cast<std::uint16_t>(p[1]) << 8));
}

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
};

double decode_sample(const std::uint8_t* p, std::uint16_t format,
                     std::uint16_t bits) {
  if (format == kFormatFloat) {
    if (bits == 32) {
      float f;
      std::memcpy(&f, p, 4);
      return static_cast<double>(f);
    }
    double d;
    std::memcpy(&d, p, 8);
    return d;
  }
  switch (bits) {
    case 8:
      // 8-bit WAV is unsigned with 128 midpoint
      return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16: {
      const std::int16_t v =
          static_cast<std::int16_t>(p[0] | (p[1] << 8));
      return v / 32768.0;
    }
    case 24: {
      std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v |= ~0xFFFFFF;  // sign extend
      return v / 8388608.0;
    }
    case 32: {
      std::int32_t v;
      std::memcpy(&v, p, 4);
      return v / 2147483648.0;
    }
    default:
      return 0.0;
  }
}

}  // namespace

Recording load_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Err::IoError, "cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(Err::MalformedHeader, path + " is not RIFF/WAVE");
  }

  FmtChunk fmt;
  bool have_fmt = false;
  const std::uint8_t* data = nullptr;
  std::size_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    char tag[5] = {0};
    std::memcpy(tag, bytes.data() + pos, 4);
    const std::uint32_t size = read_u32(bytes.data() + pos + 4);
    pos += 8;
    if (pos + size > bytes.size()) {
      // data chunk lengths are trusted only up to the file end
      if (std::strcmp(tag, "data") == 0) {
        data = bytes.data() + pos;
        data_len = bytes.size() - pos;
        break;
      }
      throw Error(Err::MalformedHeader, path + " truncated in chunk " + tag);
    }
    if (std::strcmp(tag, "fmt ") == 0) {
      if (size < 16) throw Error(Err::MalformedHeader, "fmt chunk too small");
      const std::uint8_t* p = bytes.data() + pos;
      fmt.format = read_u16(p);
      fmt.channels = read_u16(p + 2);
      fmt.sample_rate = read_u32(p + 4);
      fmt.bits_per_sample = read_u16(p + 14);
      if (fmt.format == kFormatExtensible && size >= 40) {
        fmt.format = read_u16(p + 24);  // first two bytes of the sub-format
      }
      have_fmt = true;
    } else if (std::strcmp(tag, "data") == 0) {
      data = bytes.data() + pos;
      data_len = size;
    }
    pos += size + (size & 1);  // chunks are word-aligned
  }

  if (!have_fmt) throw Error(Err::MalformedHeader, path + " missing fmt chunk");
  if (fmt.format != kFormatPcm && fmt.format != kFormatFloat) {
    throw Error(Err::UnsupportedEncoding,
                path + " uses a compressed or unknown codec");
  }
  const bool bits_ok =
      fmt.format == kFormatPcm
          ? (fmt.bits_per_sample == 8 || fmt.bits_per_sample == 16 ||
             fmt.bits_per_sample == 24 || fmt.bits_per_sample == 32)
          : (fmt.bits_per_sample == 32 || fmt.bits_per_sample == 64);
  if (!bits_ok || fmt.channels == 0 || fmt.sample_rate == 0) {
    throw Error(Err::UnsupportedEncoding, path + " has an unsupported layout");
  }
  if (!data) throw Error(Err::MalformedHeader, path + " missing data chunk");

  const std::size_t bytes_per_sample = fmt.bits_per_sample / 8;
  const std::size_t frame_bytes = bytes_per_sample * fmt.channels;
  const std::size_t frames = data_len / frame_bytes;
  if (frames == 0) throw Error(Err::EmptyAudio, path + " has zero frames");

  Recording rec;
  rec.sample_rate_hz = static_cast<int>(fmt.sample_rate);
  rec.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    rec.samples[i] = decode_sample(data + i * frame_bytes, fmt.format,
                                   fmt.bits_per_sample);
  }
  return rec;
}

void write_wav(const std::string& path, std::span<const double> samples,
               int sample_rate_hz) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Err::IoError, "cannot write " + path);
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(samples.size() * 2);
  auto put_u32 = [&](std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                 static_cast<char>((v >> 16) & 0xFF),
                 static_cast<char>((v >> 24) & 0xFF)};
    out.write(b, 4);
  };
  auto put_u16 = [&](std::uint16_t v) {
    char b[2] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF)};
    out.write(b, 2);
  };
  out.write("RIFF", 4);
  put_u32(36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put_u32(16);
  put_u16(kFormatPcm);
  put_u16(1);  // mono
  put_u32(static_cast<std::uint32_t>(sample_rate_hz));
  put_u32(static_cast<std::uint32_t>(sample_rate_hz) * 2);
  put_u16(2);
  put_u16(16);
  out.write("data", 4);
  put_u32(data_bytes);
  for (double s : samples) {
    // same 1/32768 scale as the reader, so a roundtrip stays within half a
    // quantization step
    const double clamped = std::clamp(s, -1.0, 1.0);
    const int v = std::clamp(static_cast<int>(std::lround(clamped * 32768.0)),
                             -32768, 32767);
    put_u16(static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }
  if (!out) throw Error(Err::IoError, "short write to " + path);
}

}  // namespace phonia

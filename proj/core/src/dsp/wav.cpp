#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "vircis/dsp/audio.hpp"
#include "vircis/error.hpp"

namespace vircis::dsp {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::byte> bytes) : bytes_(bytes) {}

  bool has(std::size_t n) const { return bytes_.size() - pos_ >= n; }
  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) {
      v = (v << 8) | std::to_integer<std::uint32_t>(bytes_[pos_ + i]);
    }
    pos_ += 4;
    return v;
  }
  std::uint16_t u16() {
    need(2);
    auto v = static_cast<std::uint16_t>(
        std::to_integer<std::uint16_t>(bytes_[pos_]) |
        (std::to_integer<std::uint16_t>(bytes_[pos_ + 1]) << 8));
    pos_ += 2;
    return v;
  }
  std::string tag() {
    need(4);
    std::string s(4, '\0');
    std::memcpy(s.data(), bytes_.data() + pos_, 4);
    pos_ += 4;
    return s;
  }
  void skip(std::size_t n) {
    need(n);
    pos_ += n;
  }
  std::span<const std::byte> take(std::size_t n) {
    need(n);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  void need(std::size_t n) const {
    if (!has(n)) throw Error(ErrorCode::format, "wav: truncated header or chunk");
  }

  std::span<const std::byte> bytes_;
  std::size_t pos_ = 0;
};

void put_u32(std::vector<std::byte>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFF));
}
void put_u16(std::vector<std::byte>& out, std::uint16_t v) {
  out.push_back(static_cast<std::byte>(v & 0xFF));
  out.push_back(static_cast<std::byte>(v >> 8));
}
void put_tag(std::vector<std::byte>& out, const char* tag) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::byte>(tag[i]));
}

std::int16_t to_pcm16(double x) {
  const double scaled = std::nearbyint(x * 32768.0);
  return static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
}

}  // namespace

void validate(const AudioClip& clip) {
  if (clip.sample_rate <= 0) {
    throw Error(ErrorCode::parameter, "audio: sample_rate must be positive");
  }
  for (double s : clip.samples) {
    if (!(s >= -1.0 && s <= 1.0)) {
      throw Error(ErrorCode::parameter, "audio: sample outside [-1, 1]");
    }
  }
}

AudioClip parse_wav(std::span<const std::byte> bytes) {
  ByteReader r(bytes);
  if (r.tag() != "RIFF") throw Error(ErrorCode::format, "wav: missing RIFF tag");
  r.u32();  // riff size; trust the chunk walk instead
  if (r.tag() != "WAVE") throw Error(ErrorCode::format, "wav: missing WAVE tag");

  bool have_fmt = false;
  std::uint16_t channels = 0;
  std::uint16_t bits = 0;
  std::uint32_t rate = 0;
  while (r.has(8)) {
    const std::string id = r.tag();
    const std::uint32_t size = r.u32();
    if (id == "fmt ") {
      if (size < 16) throw Error(ErrorCode::format, "wav: fmt chunk too small");
      const std::size_t start = r.position();
      std::uint16_t format = r.u16();
      channels = r.u16();
      rate = r.u32();
      r.u32();  // byte rate
      r.u16();  // block align
      bits = r.u16();
      if (format == kFormatExtensible && size >= 26) {
        r.u16();  // cbSize
        r.u16();  // valid bits
        r.u32();  // channel mask
        format = r.u16();  // first two bytes of the subformat GUID
      }
      if (format != kFormatPcm) {
        throw Error(ErrorCode::unsupported_format, "wav: only PCM is supported");
      }
      r.skip(size - (r.position() - start) + (size & 1));
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw Error(ErrorCode::format, "wav: data chunk before fmt chunk");
      if (bits != 16) {
        throw Error(ErrorCode::unsupported_format, "wav: only 16-bit samples are supported");
      }
      if (channels == 0 || channels > 2) {
        throw Error(ErrorCode::unsupported_format, "wav: only mono or stereo is supported");
      }
      if (rate == 0) throw Error(ErrorCode::format, "wav: zero sample rate");
      // Some writers leave size as 0xFFFFFFFF for streamed files.
      const std::size_t usable = std::min<std::size_t>(size, r.remaining());
      auto data = r.take(usable);
      const std::size_t frame_bytes = 2u * channels;
      const std::size_t frames = data.size() / frame_bytes;
      AudioClip clip;
      clip.sample_rate = static_cast<int>(rate);
      clip.samples.resize(frames);
      for (std::size_t i = 0; i < frames; ++i) {
        double acc = 0.0;
        for (std::size_t c = 0; c < channels; ++c) {
          const std::size_t off = i * frame_bytes + 2 * c;
          const auto raw = static_cast<std::int16_t>(
              std::to_integer<std::uint16_t>(data[off]) |
              (std::to_integer<std::uint16_t>(data[off + 1]) << 8));
          acc += raw / 32768.0;
        }
        clip.samples[i] = acc / channels;
      }
      return clip;
    } else {
      r.skip(std::min<std::size_t>(size + (size & 1), r.remaining()));
    }
  }
  throw Error(ErrorCode::format, "wav: no data chunk");
}

AudioClip load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_wav(std::as_bytes(std::span<const char>(raw)));
}

std::vector<std::byte> encode_wav(const AudioClip& clip) {
  if (clip.samples.empty()) throw Error(ErrorCode::parameter, "wav: refusing to write an empty clip");
  if (clip.sample_rate <= 0) throw Error(ErrorCode::parameter, "wav: sample_rate must be positive");
  const auto data_bytes = static_cast<std::uint32_t>(clip.samples.size() * 2);
  std::vector<std::byte> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(clip.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(clip.sample_rate) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (double s : clip.samples) put_u16(out, static_cast<std::uint16_t>(to_pcm16(s)));
  return out;
}

void save_wav(const AudioClip& clip, const std::filesystem::path& path) {
  const auto bytes = encode_wav(clip);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::io, "short write to " + path.string());
}

void quantize_pcm16(AudioClip& clip) {
  for (double& s : clip.samples) s = to_pcm16(s) / 32768.0;
}

}  // namespace vircis::dsp

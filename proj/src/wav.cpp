#include "dose/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "dose/errors.hpp"

namespace dose {
namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatIeeeFloat = 3;

uint32_t read_u32(const uint8_t* p) {
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_u16(const uint8_t* p) {
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::string& out, uint32_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>((v >> 16) & 0xFF));
    out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

void put_u16(std::string& out, uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

}  // namespace

AudioBuffer load_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_wav: cannot open " + path.string());
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    if (bytes.size() < 12) throw IoError("load_wav: truncated file " + path.string());
    if (std::memcmp(bytes.data(), "RIFF", 4) != 0 || std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
        throw FormatError("load_wav: not a RIFF/WAVE file: " + path.string());

    uint16_t format = 0, channels = 0, bits = 0;
    uint32_t rate = 0;
    bool have_fmt = false;
    const uint8_t* data = nullptr;
    uint32_t data_len = 0;

    size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
        const uint32_t len = read_u32(bytes.data() + pos + 4);
        if (pos + 8 + len > bytes.size())
            throw IoError("load_wav: truncated chunk in " + path.string());
        const uint8_t* body = bytes.data() + pos + 8;
        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (len < 16) throw FormatError("load_wav: short fmt chunk");
            format = read_u16(body);
            channels = read_u16(body + 2);
            rate = read_u32(body + 4);
            bits = read_u16(body + 14);
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0) {
            data = body;
            data_len = len;
        }
        pos += 8 + len + (len & 1);  // chunks are word-aligned
    }

    if (!have_fmt || data == nullptr)
        throw FormatError("load_wav: missing fmt or data chunk in " + path.string());
    if (format != kFormatPcm && format != kFormatIeeeFloat)
        throw FormatError("load_wav: unsupported codec tag " + std::to_string(format));
    if (rate != kSampleRate)
        throw FormatError("load_wav: unsupported sample rate " + std::to_string(rate));
    if (channels < 1 || channels > 2)
        throw FormatError("load_wav: unsupported channel count " + std::to_string(channels));

    AudioBuffer buf;
    buf.channels = channels;
    buf.sample_rate = static_cast<int>(rate);
    if (format == kFormatPcm) {
        if (bits != 16) throw FormatError("load_wav: PCM must be 16-bit, got " + std::to_string(bits));
        const size_t count = data_len / 2;
        buf.samples.resize(count);
        for (size_t i = 0; i < count; ++i) {
            const int16_t v = static_cast<int16_t>(read_u16(data + 2 * i));
            buf.samples[i] = static_cast<float>(v) / 32768.0f;
        }
    } else {
        if (bits != 32)
            throw FormatError("load_wav: float must be 32-bit, got " + std::to_string(bits));
        const size_t count = data_len / 4;
        buf.samples.resize(count);
        std::memcpy(buf.samples.data(), data, count * 4);
    }
    return buf;
}

void save_wav(const AudioBuffer& buf, const std::filesystem::path& path) {
    if (buf.channels < 1 || buf.channels > 2)
        throw ArgumentError("save_wav: channel count must be 1 or 2");
    if (buf.sample_rate != kSampleRate)
        throw ArgumentError("save_wav: sample rate must be 44100");

    const uint32_t data_bytes = static_cast<uint32_t>(buf.samples.size() * 2);
    const auto channels = static_cast<uint16_t>(buf.channels);
    const uint16_t block_align = static_cast<uint16_t>(channels * 2);

    std::string out;
    out.reserve(44 + data_bytes);
    out.append("RIFF");
    put_u32(out, 36 + data_bytes);
    out.append("WAVE");
    out.append("fmt ");
    put_u32(out, 16);
    put_u16(out, kFormatPcm);
    put_u16(out, channels);
    put_u32(out, kSampleRate);
    put_u32(out, kSampleRate * block_align);
    put_u16(out, block_align);
    put_u16(out, 16);
    out.append("data");
    put_u32(out, data_bytes);
    for (float s : buf.samples) {
        const float clamped = std::clamp(s, -1.0f, 1.0f);
        // Symmetric with the 1/32768 read scaling, so a round trip stays
        // within half an LSB everywhere except the clamped top code.
        const long q = std::lrintf(clamped * 32768.0f);
        const auto v = static_cast<int16_t>(std::clamp<long>(q, -32768, 32767));
        put_u16(out, static_cast<uint16_t>(v));
    }

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("save_wav: cannot open " + path.string() + " for writing");
    os.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!os) throw IoError("save_wav: write failed for " + path.string());
}

}  // namespace dose

#pragma once

// Independent minimal RIFF/WAVE parser used only as a test oracle. Kept
// deliberately separate from dose::load_wav: different parsing strategy
// (streamed reads instead of whole-file buffering) and no shared code.

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace wav_oracle {

struct Parsed {
    uint16_t format_tag = 0;
    uint16_t channels = 0;
    uint32_t sample_rate = 0;
    uint16_t bits_per_sample = 0;
    uint32_t byte_rate = 0;
    uint16_t block_align = 0;
    uint32_t data_bytes = 0;
    std::vector<int16_t> pcm16;  // filled when format_tag==1 && bits==16
};

inline Parsed parse(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("wav_oracle: cannot open " + path);
    auto rd = [&](void* dst, size_t n) {
        if (std::fread(dst, 1, n, f) != n) {
            std::fclose(f);
            throw std::runtime_error("wav_oracle: short read in " + path);
        }
    };
    auto rd_u32 = [&]() {
        uint8_t b[4];
        rd(b, 4);
        return uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 | uint32_t(b[3]) << 24;
    };
    auto rd_u16 = [&]() {
        uint8_t b[2];
        rd(b, 2);
        return uint16_t(b[0] | (b[1] << 8));
    };

    char tag[5] = {0};
    rd(tag, 4);
    if (std::string(tag) != "RIFF") {
        std::fclose(f);
        throw std::runtime_error("wav_oracle: no RIFF tag");
    }
    (void)rd_u32();  // riff size
    rd(tag, 4);
    if (std::string(tag) != "WAVE") {
        std::fclose(f);
        throw std::runtime_error("wav_oracle: no WAVE tag");
    }

    Parsed p;
    while (std::fread(tag, 1, 4, f) == 4) {
        const uint32_t len = rd_u32();
        const std::string id(tag, 4);
        if (id == "fmt ") {
            p.format_tag = rd_u16();
            p.channels = rd_u16();
            p.sample_rate = rd_u32();
            p.byte_rate = rd_u32();
            p.block_align = rd_u16();
            p.bits_per_sample = rd_u16();
            if (len > 16) std::fseek(f, static_cast<long>(len - 16), SEEK_CUR);
        } else if (id == "data") {
            p.data_bytes = len;
            if (p.format_tag == 1 && p.bits_per_sample == 16) {
                p.pcm16.resize(len / 2);
                for (auto& s : p.pcm16) s = static_cast<int16_t>(rd_u16());
                if (len & 1) std::fseek(f, 1, SEEK_CUR);
            } else {
                std::fseek(f, static_cast<long>(len + (len & 1)), SEEK_CUR);
            }
        } else {
            std::fseek(f, static_cast<long>(len + (len & 1)), SEEK_CUR);
        }
    }
    std::fclose(f);
    return p;
}

}  // namespace wav_oracle

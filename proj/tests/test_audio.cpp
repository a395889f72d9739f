#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "dose/audio.hpp"
#include "dose/errors.hpp"
#include "dose/rng.hpp"
#include "dose/wav.hpp"
#include "support/tmpdir.hpp"
#include "support/wav_oracle.hpp"

using namespace dose;

namespace {

AudioBuffer random_buffer(Rng& rng, int64_t frames, int channels) {
    AudioBuffer b(frames, channels);
    for (auto& s : b.samples) s = static_cast<float>(rng.uniform_real(-1.0, 1.0));
    return b;
}

// Raw 16-bit mono WAV with an arbitrary rate, for hand-built inputs.
void write_raw_pcm16(const std::filesystem::path& path, const std::vector<int16_t>& data,
                     uint32_t rate) {
    std::ofstream os(path, std::ios::binary);
    auto u32 = [&](uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); };
    auto u16 = [&](uint16_t v) { os.write(reinterpret_cast<const char*>(&v), 2); };
    const uint32_t data_bytes = static_cast<uint32_t>(data.size() * 2);
    os.write("RIFF", 4);
    u32(36 + data_bytes);
    os.write("WAVE", 4);
    os.write("fmt ", 4);
    u32(16);
    u16(1);
    u16(1);
    u32(rate);
    u32(rate * 2);
    u16(2);
    u16(16);
    os.write("data", 4);
    u32(data_bytes);
    for (int16_t v : data) u16(static_cast<uint16_t>(v));
}

}  // namespace

TEST_CASE("load_wav scales 16-bit integers by 1/32768") {
    TmpDir tmp("wav_scale");
    write_raw_pcm16(tmp / "one.wav", {32767}, 44100);
    const AudioBuffer b = load_wav(tmp / "one.wav");
    REQUIRE(b.samples.size() == 1);
    CHECK(b.samples[0] == doctest::Approx(32767.0 / 32768.0).epsilon(1e-9));

    write_raw_pcm16(tmp / "neg.wav", {-32768}, 44100);
    CHECK(load_wav(tmp / "neg.wav").samples[0] == doctest::Approx(-1.0));
}

TEST_CASE("load_wav rejects unsupported rates and formats") {
    TmpDir tmp("wav_reject");
    write_raw_pcm16(tmp / "48k.wav", {0, 0}, 48000);
    CHECK_THROWS_AS((void)load_wav(tmp / "48k.wav"), FormatError);

    std::ofstream(tmp / "garbage.wav") << "not a wav at all";
    CHECK_THROWS_AS((void)load_wav(tmp / "garbage.wav"), FormatError);

    CHECK_THROWS_AS((void)load_wav(tmp / "missing.wav"), IoError);

    // Truncate a valid file mid-data.
    write_raw_pcm16(tmp / "trunc.wav", std::vector<int16_t>(100, 7), 44100);
    std::filesystem::resize_file(tmp / "trunc.wav", 60);
    CHECK_THROWS_AS((void)load_wav(tmp / "trunc.wav"), IoError);
}

TEST_CASE("save_wav emits canonical 16-bit PCM verified by an independent parser") {
    TmpDir tmp("wav_canon");
    AudioBuffer b(44100, 2);
    save_wav(b, tmp / "z.wav");

    const auto parsed = wav_oracle::parse((tmp / "z.wav").string());
    CHECK(parsed.format_tag == 1);
    CHECK(parsed.bits_per_sample == 16);
    CHECK(parsed.sample_rate == 44100);
    CHECK(parsed.channels == 2);
    CHECK(parsed.block_align == 4);
    CHECK(parsed.byte_rate == 44100u * 4u);
    CHECK(parsed.data_bytes == 176400u);  // 44100 frames x 2 ch x 2 bytes
}

TEST_CASE("save_wav clamps out-of-range samples") {
    TmpDir tmp("wav_clamp");
    AudioBuffer b;
    b.samples = {1.5f, -2.0f, 0.0f};
    b.channels = 1;
    save_wav(b, tmp / "c.wav");
    const auto parsed = wav_oracle::parse((tmp / "c.wav").string());
    REQUIRE(parsed.pcm16.size() == 3);
    CHECK(parsed.pcm16[0] == 32767);
    CHECK(parsed.pcm16[1] == -32768);
    CHECK(parsed.pcm16[2] == 0);
}

TEST_CASE("save then load reproduces samples within the quantization bound") {
    TmpDir tmp("wav_roundtrip");
    Rng rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
        const AudioBuffer b = random_buffer(rng, 997, trial % 2 ? 2 : 1);
        save_wav(b, tmp / "r.wav");
        const AudioBuffer c = load_wav(tmp / "r.wav");
        REQUIRE(c.samples.size() == b.samples.size());
        CHECK(c.channels == b.channels);
        for (size_t i = 0; i < b.samples.size(); ++i)
            CHECK(std::abs(c.samples[i] - b.samples[i]) <= 1.0f / 32768.0f);
    }
}

TEST_CASE("gain_db") {
    Rng rng(1);
    const AudioBuffer b = random_buffer(rng, 64, 1);

    SUBCASE("0 dB is the identity") {
        const AudioBuffer g = gain_db(b, 0.0);
        for (size_t i = 0; i < b.samples.size(); ++i) CHECK(g.samples[i] == b.samples[i]);
    }
    SUBCASE("layering weights match their stated decibel values") {
        AudioBuffer unit;
        unit.samples = {1.0f};
        CHECK(gain_db(unit, -1.94).samples[0] == doctest::Approx(0.7998).epsilon(1e-3));
        CHECK(gain_db(unit, -13.98).samples[0] == doctest::Approx(0.2000).epsilon(1e-3));
    }
    SUBCASE("gains compose additively") {
        Rng r2(77);
        for (int trial = 0; trial < 20; ++trial) {
            const double d1 = r2.uniform_real(-24.0, 12.0);
            const double d2 = r2.uniform_real(-24.0, 12.0);
            const AudioBuffer lhs = gain_db(gain_db(b, d1), d2);
            const AudioBuffer rhs = gain_db(b, d1 + d2);
            for (size_t i = 0; i < b.samples.size(); ++i)
                CHECK(lhs.samples[i] ==
                      doctest::Approx(rhs.samples[i]).epsilon(1e-6).scale(1.0));
        }
    }
    SUBCASE("non-finite gain is rejected") {
        CHECK_THROWS_AS((void)gain_db(b, std::nan("")), ArgumentError);
    }
}

TEST_CASE("mix_sum") {
    Rng rng(3);
    const AudioBuffer b = random_buffer(rng, 100, 1);

    SUBCASE("single element identity") {
        const AudioBuffer m = mix_sum({b});
        CHECK(m.samples == b.samples);
    }
    SUBCASE("additive inverse cancels") {
        const AudioBuffer m = mix_sum({b, gain_db(b, 0.0), b});
        AudioBuffer neg = b;
        for (auto& s : neg.samples) s = -s;
        const AudioBuffer z = mix_sum({b, neg});
        CHECK(z.frames() == b.frames());
        for (float s : z.samples) CHECK(s == doctest::Approx(0.0f));
        (void)m;
    }
    SUBCASE("output length is the max input length") {
        const AudioBuffer c = random_buffer(rng, 150, 1);
        CHECK(mix_sum({b, c}).frames() == 150);
        CHECK(mix_sum({c, b}).frames() == 150);
    }
    SUBCASE("commutative and associative") {
        const AudioBuffer c = random_buffer(rng, 80, 1);
        const AudioBuffer d = random_buffer(rng, 120, 1);
        const AudioBuffer ab = mix_sum({b, c});
        const AudioBuffer ba = mix_sum({c, b});
        for (size_t i = 0; i < ab.samples.size(); ++i)
            CHECK(std::abs(ab.samples[i] - ba.samples[i]) <= 1e-6f);
        const AudioBuffer lhs = mix_sum({mix_sum({b, c}), d});
        const AudioBuffer rhs = mix_sum({b, mix_sum({c, d})});
        for (size_t i = 0; i < lhs.samples.size(); ++i)
            CHECK(std::abs(lhs.samples[i] - rhs.samples[i]) <= 1e-6f);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS((void)mix_sum({}), ArgumentError);
        const AudioBuffer st = random_buffer(rng, 10, 2);
        CHECK_THROWS_AS((void)mix_sum({b, st}), ArgumentError);
    }
}

TEST_CASE("slice") {
    AudioBuffer ramp;
    ramp.samples = {0.0f, 1.0f, 2.0f, 3.0f};
    ramp.channels = 1;

    SUBCASE("full-range slice is the identity") {
        CHECK(slice(ramp, 0, 4).samples == ramp.samples);
    }
    SUBCASE("fully out of range yields zeros") {
        const AudioBuffer z = slice(ramp, 4, 10);
        CHECK(z.frames() == 10);
        for (float s : z.samples) CHECK(s == 0.0f);
    }
    SUBCASE("interior slice") {
        const AudioBuffer s = slice(ramp, 1, 2);
        REQUIRE(s.samples.size() == 2);
        CHECK(s.samples[0] == 1.0f);
        CHECK(s.samples[1] == 2.0f);
    }
    SUBCASE("partial overlap zero-pads the tail") {
        const AudioBuffer s = slice(ramp, 2, 4);
        REQUIRE(s.samples.size() == 4);
        CHECK(s.samples[0] == 2.0f);
        CHECK(s.samples[1] == 3.0f);
        CHECK(s.samples[2] == 0.0f);
        CHECK(s.samples[3] == 0.0f);
    }
}

TEST_CASE("downmix_mono averages channels") {
    AudioBuffer st(2, 2);
    st.at(0, 0) = 1.0f;
    st.at(0, 1) = 0.0f;
    st.at(1, 0) = -0.5f;
    st.at(1, 1) = 0.5f;
    const AudioBuffer m = downmix_mono(st);
    REQUIRE(m.frames() == 2);
    CHECK(m.samples[0] == doctest::Approx(0.5f));
    CHECK(m.samples[1] == doctest::Approx(0.0f));
}

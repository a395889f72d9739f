#include "dose/audio.hpp"

#include <algorithm>
#include <cmath>

#include "dose/errors.hpp"

namespace dose {

AudioBuffer make_mono(std::vector<float> samples, int sample_rate) {
    AudioBuffer b;
    b.samples = std::move(samples);
    b.channels = 1;
    b.sample_rate = sample_rate;
    return b;
}

AudioBuffer gain_db(const AudioBuffer& buf, double db) {
    if (!std::isfinite(db)) throw ArgumentError("gain_db: non-finite gain");
    const float g = static_cast<float>(std::pow(10.0, db / 20.0));
    AudioBuffer out = buf;
    for (float& s : out.samples) s *= g;
    return out;
}

AudioBuffer mix_sum(const std::vector<AudioBuffer>& buffers) {
    if (buffers.empty()) throw ArgumentError("mix_sum: empty buffer list");
    const int channels = buffers.front().channels;
    int64_t max_frames = 0;
    for (const auto& b : buffers) {
        if (b.channels != channels) throw ArgumentError("mix_sum: mixed channel counts");
        max_frames = std::max(max_frames, b.frames());
    }
    AudioBuffer out(max_frames, channels, buffers.front().sample_rate);
    for (const auto& b : buffers) {
        const size_t n = b.samples.size();
        for (size_t i = 0; i < n; ++i) out.samples[i] += b.samples[i];
    }
    return out;
}

AudioBuffer slice(const AudioBuffer& buf, int64_t start_frame, int64_t len_frames) {
    if (start_frame < 0) throw ArgumentError("slice: negative start");
    if (len_frames < 0) throw ArgumentError("slice: negative length");
    AudioBuffer out(len_frames, buf.channels, buf.sample_rate);
    const int64_t src_frames = buf.frames();
    const int64_t copy = std::max<int64_t>(0, std::min(len_frames, src_frames - start_frame));
    if (copy > 0) {
        const auto begin = buf.samples.begin() + start_frame * buf.channels;
        std::copy(begin, begin + copy * buf.channels, out.samples.begin());
    }
    return out;
}

AudioBuffer downmix_mono(const AudioBuffer& buf) {
    if (buf.channels == 1) return buf;
    AudioBuffer out(buf.frames(), 1, buf.sample_rate);
    const float inv = 1.0f / static_cast<float>(buf.channels);
    for (int64_t f = 0; f < buf.frames(); ++f) {
        float acc = 0.0f;
        for (int c = 0; c < buf.channels; ++c) acc += buf.at(f, c);
        out.samples[static_cast<size_t>(f)] = acc * inv;
    }
    return out;
}

float peak(const AudioBuffer& buf) {
    float p = 0.0f;
    for (float s : buf.samples) p = std::max(p, std::abs(s));
    return p;
}

bool all_finite(const AudioBuffer& buf) {
    return std::all_of(buf.samples.begin(), buf.samples.end(),
                       [](float s) { return std::isfinite(s); });
}

}  // namespace dose

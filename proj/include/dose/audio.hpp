#pragma once

#include <cstdint>
#include <vector>

namespace dose {

inline constexpr int kSampleRate = 44100;

// Interleaved 32-bit float PCM. The carrier type for every signal in the
// pipeline; 44100 Hz everywhere, 1 or 2 channels.
struct AudioBuffer {
    std::vector<float> samples;  // interleaved, frames() * channels entries
    int channels = 1;
    int sample_rate = kSampleRate;

    AudioBuffer() = default;
    AudioBuffer(int64_t frames, int channels_, int sample_rate_ = kSampleRate)
        : samples(static_cast<size_t>(frames * channels_), 0.0f),
          channels(channels_),
          sample_rate(sample_rate_) {}

    int64_t frames() const {
        return channels == 0 ? 0 : static_cast<int64_t>(samples.size()) / channels;
    }

    float& at(int64_t frame, int ch) { return samples[static_cast<size_t>(frame * channels + ch)]; }
    float at(int64_t frame, int ch) const {
        return samples[static_cast<size_t>(frame * channels + ch)];
    }

    double duration_seconds() const {
        return sample_rate == 0 ? 0.0 : static_cast<double>(frames()) / sample_rate;
    }
};

AudioBuffer make_mono(std::vector<float> samples, int sample_rate = kSampleRate);

// Every sample scaled by 10^(db/20).
AudioBuffer gain_db(const AudioBuffer& buf, double db);

// Sample-wise sum; output length is the max input length, shorter inputs are
// zero-padded. No normalization. All inputs must share a channel count.
AudioBuffer mix_sum(const std::vector<AudioBuffer>& buffers);

// len_samples frames starting at start_frame, zero-padded past the end.
AudioBuffer slice(const AudioBuffer& buf, int64_t start_frame, int64_t len_frames);

// Channel average; the fixed mono rule applied before codec encoding.
AudioBuffer downmix_mono(const AudioBuffer& buf);

// Largest absolute sample value.
float peak(const AudioBuffer& buf);

bool all_finite(const AudioBuffer& buf);

}  // namespace dose

#include "dose/pitch.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dose/errors.hpp"

namespace dose {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<float> resample_linear(const std::vector<float>& x, double ratio) {
    const auto in_len = static_cast<int64_t>(x.size());
    const auto out_len =
        std::max<int64_t>(1, static_cast<int64_t>(std::floor((in_len - 1) / ratio)) + 1);
    std::vector<float> out(static_cast<size_t>(out_len));
    for (int64_t n = 0; n < out_len; ++n) {
        const double pos = n * ratio;
        const auto i = static_cast<int64_t>(pos);
        const double frac = pos - static_cast<double>(i);
        const float a = x[static_cast<size_t>(std::min(i, in_len - 1))];
        const float b = x[static_cast<size_t>(std::min(i + 1, in_len - 1))];
        out[static_cast<size_t>(n)] = static_cast<float>(a + frac * (b - a));
    }
    return out;
}

// Waveform-similarity overlap-add stretch from x.size() to out_len samples.
// Grain positions follow the nominal time map but each grain is shifted by
// the lag (within +-kMaxLag) that best continues the previous grain, so
// periodic material stays phase-coherent instead of self-cancelling.
std::vector<float> wsola_stretch(const std::vector<float>& x, int64_t out_len) {
    const auto in_len = static_cast<int64_t>(x.size());
    constexpr int64_t grain = 2048;
    constexpr int64_t syn_hop = grain / 4;
    constexpr int64_t kMaxLag = 300;
    constexpr int64_t kCompareLen = 512;

    if (in_len <= grain || out_len <= grain)
        return resample_linear(x, static_cast<double>(in_len) / out_len);

    std::vector<float> window(static_cast<size_t>(grain));
    for (int64_t i = 0; i < grain; ++i)
        window[static_cast<size_t>(i)] =
            static_cast<float>(0.5 - 0.5 * std::cos(2.0 * kPi * i / grain));

    std::vector<double> acc(static_cast<size_t>(out_len), 0.0);
    std::vector<double> norm(static_cast<size_t>(out_len), 0.0);

    const int64_t n_grains = (out_len - grain) / syn_hop + 1;
    int64_t prev_in = 0;
    for (int64_t gi = 0; gi < n_grains; ++gi) {
        const int64_t out_pos = gi * syn_hop;
        int64_t in_pos = n_grains == 1
                             ? 0
                             : static_cast<int64_t>(std::llround(
                                   static_cast<double>(gi) * (in_len - grain) / (n_grains - 1)));
        if (gi > 0) {
            // The seamless continuation of the previous grain.
            const int64_t ref = std::min(prev_in + syn_hop, in_len - kCompareLen);
            const float* target = x.data() + ref;
            const int64_t lo = std::max<int64_t>(0, in_pos - kMaxLag);
            const int64_t hi = std::min(in_len - grain, in_pos + kMaxLag);
            double best_score = -1e300;
            int64_t best = in_pos;
            for (int64_t cand = lo; cand <= hi; ++cand) {
                const float* seg = x.data() + cand;
                double dot = 0.0;
                for (int64_t j = 0; j < kCompareLen; ++j)
                    dot += static_cast<double>(seg[j]) * target[j];
                if (dot > best_score) {
                    best_score = dot;
                    best = cand;
                }
            }
            in_pos = best;
        }
        prev_in = in_pos;

        const int64_t n = std::min(grain, out_len - out_pos);
        for (int64_t j = 0; j < n; ++j) {
            const float w = window[static_cast<size_t>(j)];
            acc[static_cast<size_t>(out_pos + j)] += w * x[static_cast<size_t>(in_pos + j)];
            norm[static_cast<size_t>(out_pos + j)] += w;
        }
    }

    std::vector<float> out(static_cast<size_t>(out_len), 0.0f);
    for (int64_t i = 0; i < out_len; ++i) {
        const double n = norm[static_cast<size_t>(i)];
        out[static_cast<size_t>(i)] =
            n > 1e-6 ? static_cast<float>(acc[static_cast<size_t>(i)] / n) : 0.0f;
    }
    return out;
}

}  // namespace

AudioBuffer pitch_shift(const AudioBuffer& mono, int semitones) {
    if (mono.channels != 1) throw ArgumentError("pitch_shift: mono input required");
    if (semitones == 0) return mono;
    if (mono.samples.empty()) return mono;

    const double ratio = std::pow(2.0, semitones / 12.0);
    AudioBuffer out = mono;
    out.samples = wsola_stretch(resample_linear(mono.samples, ratio), mono.frames());
    return out;
}

}  // namespace dose

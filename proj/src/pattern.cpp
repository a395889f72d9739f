#include "dose/pattern.hpp"

#include <algorithm>
#include <cmath>

#include "dose/errors.hpp"

namespace dose {

const char* drum_class_name(DrumClass c) {
    switch (c) {
        case DrumClass::kick: return "kick";
        case DrumClass::snare: return "snare";
        case DrumClass::hihat: return "hihat";
    }
    return "?";
}

DrumClass drum_class_from_name(const std::string& name) {
    for (DrumClass c : kDrumClasses)
        if (name == drum_class_name(c)) return c;
    throw ArgumentError("unknown drum class: " + name);
}

namespace {

std::pair<int, int> count_range(DrumClass c) {
    return c == DrumClass::hihat ? std::pair{14, 18} : std::pair{2, 4};
}

}  // namespace

void DrumPattern::validate() const {
    for (DrumClass c : kDrumClasses) {
        const auto it = onsets.find(c);
        if (it == onsets.end()) throw ArgumentError("pattern missing class");
        const auto [lo, hi] = count_range(c);
        const auto& v = it->second;
        if (static_cast<int>(v.size()) < lo || static_cast<int>(v.size()) > hi)
            throw ArgumentError(std::string("pattern hit count out of range for ") +
                                drum_class_name(c));
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i] < 0 || v[i] >= kGridSize) throw ArgumentError("onset index out of grid");
            if (i > 0 && v[i] <= v[i - 1]) throw ArgumentError("onsets not strictly increasing");
        }
    }
}

DrumPattern generate_drum_pattern(Rng rng) {
    DrumPattern p;
    for (DrumClass c : kDrumClasses) {
        const auto [lo, hi] = count_range(c);
        Rng sub = rng.child(drum_class_name(c));
        const int count = static_cast<int>(sub.uniform_int(lo, hi));
        p.onsets[c] = sub.sample_without_replacement(DrumPattern::kGridSize, count);
    }
    p.validate();
    return p;
}

int64_t grid_to_sample(int grid_index) {
    const double step = DrumPattern::kLoopSeconds * kSampleRate / DrumPattern::kGridSize;
    return static_cast<int64_t>(std::llround(grid_index * step));
}

std::map<DrumClass, AudioBuffer> render_drum_loop(
    const DrumPattern& pattern, const std::map<DrumClass, AudioBuffer>& samples) {
    pattern.validate();
    std::map<DrumClass, AudioBuffer> stems;
    for (DrumClass c : kDrumClasses) {
        const auto it = samples.find(c);
        if (it == samples.end())
            throw ArgumentError(std::string("render_drum_loop: missing sample for ") +
                                drum_class_name(c));
        const AudioBuffer& shot = it->second;
        if (shot.channels != 1) throw ArgumentError("render_drum_loop: one-shots must be mono");

        AudioBuffer stem(kLoopFrames, 1);
        const auto& onsets = pattern.onsets.at(c);
        for (size_t j = 0; j < onsets.size(); ++j) {
            const int64_t start = grid_to_sample(onsets[j]);
            int64_t end = j + 1 < onsets.size() ? grid_to_sample(onsets[j + 1]) : kLoopFrames;
            end = std::min(end, kLoopFrames);
            const int64_t len = std::min<int64_t>(shot.frames(), end - start);
            for (int64_t i = 0; i < len; ++i)
                stem.samples[static_cast<size_t>(start + i)] = shot.samples[static_cast<size_t>(i)];
        }
        stems.emplace(c, std::move(stem));
    }
    return stems;
}

}  // namespace dose

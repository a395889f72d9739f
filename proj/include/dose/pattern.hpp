#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "dose/audio.hpp"
#include "dose/rng.hpp"

namespace dose {

enum class DrumClass { kick, snare, hihat };

inline constexpr std::array<DrumClass, 3> kDrumClasses = {DrumClass::kick, DrumClass::snare,
                                                          DrumClass::hihat};

const char* drum_class_name(DrumClass c);
DrumClass drum_class_from_name(const std::string& name);

// Per-class onset positions on a 1,920-point grid over a 4-second loop.
struct DrumPattern {
    static constexpr int kGridSize = 1920;
    static constexpr double kLoopSeconds = 4.0;

    std::map<DrumClass, std::vector<int>> onsets;  // sorted, strictly increasing

    // Throws ArgumentError if counts or ordering are out of contract.
    void validate() const;
};

// kick/snare 2-4 hits, hi-hat 14-18 hits, indices uniform without replacement.
DrumPattern generate_drum_pattern(Rng rng);

// Sample index of a grid position: round(g * 4*44100/1920); the grid step of
// 91.875 samples is non-integer so onsets land on the nearest sample.
int64_t grid_to_sample(int grid_index);

inline constexpr int64_t kLoopFrames = static_cast<int64_t>(4.0 * kSampleRate);

// One 4-second mono buffer per class. Within a class, an instance still
// sounding when the next onset of that class arrives is truncated exactly at
// the new onset; classes never truncate each other. One-shots are cut at the
// loop end.
std::map<DrumClass, AudioBuffer> render_drum_loop(const DrumPattern& pattern,
                                                  const std::map<DrumClass, AudioBuffer>& samples);

}  // namespace dose

#pragma once

#include "dose/audio.hpp"

namespace dose {

// Duration-preserving integer-semitone pitch shift: linear-interpolation
// resampling by 2^(semitones/12) followed by an overlap-add time stretch back
// to the original length. A shift of 0 returns the input unchanged.
AudioBuffer pitch_shift(const AudioBuffer& mono, int semitones);

}  // namespace dose

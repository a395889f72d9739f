#pragma once

#include <filesystem>

#include "dose/audio.hpp"

namespace dose {

// Reads a PCM WAV file (16-bit integer or 32-bit float, 44100 Hz, 1-2
// channels). 16-bit values are scaled by 1/32768 so -32768 maps to -1.0.
AudioBuffer load_wav(const std::filesystem::path& path);

// Writes canonical RIFF/WAVE, PCM 16-bit little-endian, 44100 Hz. Samples are
// clamped to [-1, 1], scaled to the 16-bit grid and rounded to nearest.
void save_wav(const AudioBuffer& buf, const std::filesystem::path& path);

}  // namespace dose

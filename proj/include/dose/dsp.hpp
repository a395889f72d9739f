#pragma once

#include <optional>
#include <vector>

#include "dose/audio.hpp"
#include "dose/rng.hpp"

namespace dose {

enum class EqBandType { low_shelf, peak, high_shelf };

struct EqBand {
    EqBandType type = EqBandType::peak;
    double freq_hz = 1000.0;
    double gain_db = 0.0;
    double q = 0.707;
};

struct CompressorParams {
    double threshold_db = -20.0;
    double ratio = 2.0;  // >= 1
    double attack_ms = 10.0;
    double release_ms = 100.0;
};

struct DelayParams {
    double time_ms = 250.0;
    double feedback = 0.3;  // < 1
    double wet = 0.2;       // [0, 1]
};

struct ReverbParams {
    double decay_seconds = 1.0;
    double wet = 0.2;  // [0, 1]
};

enum class TrackRole { drum, instrument, master };

// One mixing chain's worth of randomized effect settings. Master chains carry
// only EQ and a limiter; pan stays centered and the dynamics/sends are absent.
struct FxParams {
    TrackRole role = TrackRole::instrument;
    double gain_db = 0.0;
    std::vector<EqBand> eq;
    std::optional<CompressorParams> compressor;
    double pan = 0.0;  // [-1, 1], 0 = center
    double limiter_threshold_db = -0.5;
    std::optional<DelayParams> delay;
    std::optional<ReverbParams> reverb;

    // Throws ArgumentError when a field is outside its documented range.
    void validate() const;
};

// RBJ cookbook biquad, direct form II transposed.
class Biquad {
  public:
    static Biquad design(const EqBand& band, int sample_rate);
    float process_sample(float x);
    void process(std::vector<float>& inout);

  private:
    double b0_ = 1, b1_ = 0, b2_ = 0, a1_ = 0, a2_ = 0;
    double z1_ = 0, z2_ = 0;
};

// Feed-forward compressor: peak envelope with attack/release smoothing,
// static curve out = thr + (in - thr)/ratio above threshold, no makeup gain.
AudioBuffer compress(const AudioBuffer& buf, const CompressorParams& params);

// Peak limiter with instant attack and exponential release. Output magnitude
// never exceeds the threshold amplitude.
AudioBuffer limit(const AudioBuffer& buf, double threshold_db);

// Pure wet echo branch: y[n] = x[n-D] + feedback * y[n-D], unit wet.
AudioBuffer delay_branch(const AudioBuffer& mono, const DelayParams& params);

// Schroeder reverberator (4 parallel combs + 2 series allpasses), unit wet.
AudioBuffer reverb_branch(const AudioBuffer& mono, const ReverbParams& params);

// Boost-free linear pan: L = x*min(1, 1-p), R = x*min(1, 1+p).
AudioBuffer pan_mono_to_stereo(const AudioBuffer& mono, double pan);

// Full mixing chain. Mono track roles: gain -> EQ -> compressor -> (+ wet
// delay/reverb branches fed from the post-EQ signal) -> pan -> limiter,
// returning stereo. Master role: per-channel EQ -> limiter on an already
// stereo buffer. Output length always equals input length.
AudioBuffer apply_fx_chain(const AudioBuffer& track, const FxParams& params);

// Draws every parameter uniformly from its documented range; deterministic
// per seed. role selects the drum/instrument/master layout.
FxParams sample_fx_params(Rng rng, TrackRole role);

}  // namespace dose

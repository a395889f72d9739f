#include "dose/dsp.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "dose/errors.hpp"

namespace dose {
namespace {

constexpr double kPi = 3.14159265358979323846;

double db_to_amp(double db) { return std::pow(10.0, db / 20.0); }

// One-pole coefficient for a time constant given in milliseconds.
double smoothing_coeff(double tau_ms, int sample_rate) {
    const double samples = std::max(1.0, tau_ms * sample_rate / 1000.0);
    return 1.0 - std::exp(-1.0 / samples);
}

void check(bool ok, const char* what) {
    if (!ok) throw ArgumentError(std::string("FxParams: ") + what);
}

}  // namespace

void FxParams::validate() const {
    check(std::isfinite(gain_db), "gain must be finite");
    for (const auto& band : eq) {
        check(band.freq_hz > 20.0 && band.freq_hz < 20000.0, "eq frequency out of (20, 20000)");
        check(band.q > 0.0, "eq q must be positive");
        check(std::isfinite(band.gain_db), "eq gain must be finite");
    }
    if (compressor) {
        check(compressor->ratio >= 1.0, "ratio must be >= 1");
        check(compressor->attack_ms > 0.0 && compressor->release_ms > 0.0,
              "compressor times must be positive");
    }
    check(pan >= -1.0 && pan <= 1.0, "pan out of [-1, 1]");
    check(std::isfinite(limiter_threshold_db), "limiter threshold must be finite");
    if (delay) {
        check(delay->feedback >= 0.0 && delay->feedback < 1.0, "delay feedback out of [0, 1)");
        check(delay->wet >= 0.0 && delay->wet <= 1.0, "delay wet out of [0, 1]");
        check(delay->time_ms > 0.0, "delay time must be positive");
    }
    if (reverb) {
        check(reverb->wet >= 0.0 && reverb->wet <= 1.0, "reverb wet out of [0, 1]");
        check(reverb->decay_seconds > 0.0, "reverb decay must be positive");
    }
    if (role == TrackRole::master) {
        check(pan == 0.0, "master pan must stay centered");
        check(!compressor && !delay && !reverb, "master chain is EQ and limiter only");
    }
}

Biquad Biquad::design(const EqBand& band, int sample_rate) {
    const double A = std::pow(10.0, band.gain_db / 40.0);
    const double w = 2.0 * kPi * band.freq_hz / sample_rate;
    const double cw = std::cos(w);
    const double sw = std::sin(w);

    double b0, b1, b2, a0, a1, a2;
    switch (band.type) {
        case EqBandType::peak: {
            const double alpha = sw / (2.0 * band.q);
            b0 = 1.0 + alpha * A;
            b1 = -2.0 * cw;
            b2 = 1.0 - alpha * A;
            a0 = 1.0 + alpha / A;
            a1 = -2.0 * cw;
            a2 = 1.0 - alpha / A;
            break;
        }
        case EqBandType::low_shelf: {
            const double alpha = sw / 2.0 * std::sqrt(2.0);  // shelf slope S = 1
            const double t = 2.0 * std::sqrt(A) * alpha;
            b0 = A * ((A + 1) - (A - 1) * cw + t);
            b1 = 2 * A * ((A - 1) - (A + 1) * cw);
            b2 = A * ((A + 1) - (A - 1) * cw - t);
            a0 = (A + 1) + (A - 1) * cw + t;
            a1 = -2 * ((A - 1) + (A + 1) * cw);
            a2 = (A + 1) + (A - 1) * cw - t;
            break;
        }
        case EqBandType::high_shelf:
        default: {
            const double alpha = sw / 2.0 * std::sqrt(2.0);
            const double t = 2.0 * std::sqrt(A) * alpha;
            b0 = A * ((A + 1) + (A - 1) * cw + t);
            b1 = -2 * A * ((A - 1) + (A + 1) * cw);
            b2 = A * ((A + 1) + (A - 1) * cw - t);
            a0 = (A + 1) - (A - 1) * cw + t;
            a1 = 2 * ((A - 1) - (A + 1) * cw);
            a2 = (A + 1) - (A - 1) * cw - t;
            break;
        }
    }

    Biquad bi;
    bi.b0_ = b0 / a0;
    bi.b1_ = b1 / a0;
    bi.b2_ = b2 / a0;
    bi.a1_ = a1 / a0;
    bi.a2_ = a2 / a0;
    return bi;
}

float Biquad::process_sample(float x) {
    const double y = b0_ * x + z1_;
    z1_ = b1_ * x - a1_ * y + z2_;
    z2_ = b2_ * x - a2_ * y;
    return static_cast<float>(y);
}

void Biquad::process(std::vector<float>& inout) {
    for (float& s : inout) s = process_sample(s);
}

AudioBuffer compress(const AudioBuffer& buf, const CompressorParams& params) {
    if (params.ratio < 1.0) throw ArgumentError("compress: ratio must be >= 1");
    const double att = smoothing_coeff(params.attack_ms, buf.sample_rate);
    const double rel = smoothing_coeff(params.release_ms, buf.sample_rate);
    const double inv_ratio = 1.0 / params.ratio;

    AudioBuffer out = buf;
    double env = 0.0;   // peak envelope: instant rise, release-timed fall
    double gain = 1.0;  // smoothed gain: attack into reduction, release out
    const int ch = buf.channels;
    for (int64_t f = 0; f < buf.frames(); ++f) {
        double mag = 0.0;
        for (int c = 0; c < ch; ++c)
            mag = std::max(mag, std::abs(static_cast<double>(buf.at(f, c))));
        env = std::max(mag, env + rel * (mag - env));
        const double env_db = 20.0 * std::log10(std::max(env, 1e-9));
        const double over = env_db - params.threshold_db;
        const double target = over > 0.0 ? db_to_amp(over * (inv_ratio - 1.0)) : 1.0;
        gain += (target < gain ? att : rel) * (target - gain);
        for (int c = 0; c < ch; ++c) out.at(f, c) = static_cast<float>(buf.at(f, c) * gain);
    }
    return out;
}

AudioBuffer limit(const AudioBuffer& buf, double threshold_db) {
    const double thr = db_to_amp(threshold_db);
    const double rel = smoothing_coeff(50.0, buf.sample_rate);

    AudioBuffer out = buf;
    double gain = 1.0;
    const int ch = buf.channels;
    for (int64_t f = 0; f < buf.frames(); ++f) {
        double mag = 0.0;
        for (int c = 0; c < ch; ++c)
            mag = std::max(mag, std::abs(static_cast<double>(buf.at(f, c))));
        const double target = mag > thr ? thr / mag : 1.0;
        if (target < gain)
            gain = target;  // instant attack keeps the ceiling hard
        else
            gain = std::min(1.0, gain + rel * (target - gain));
        for (int c = 0; c < ch; ++c) {
            const double y = buf.at(f, c) * gain;
            out.at(f, c) = static_cast<float>(std::clamp(y, -thr, thr));
        }
    }
    return out;
}

AudioBuffer delay_branch(const AudioBuffer& mono, const DelayParams& params) {
    if (mono.channels != 1) throw ArgumentError("delay_branch: mono input required");
    const auto d = static_cast<int64_t>(std::lround(params.time_ms * mono.sample_rate / 1000.0));
    AudioBuffer out(mono.frames(), 1, mono.sample_rate);
    if (d <= 0) return out;
    for (int64_t n = d; n < mono.frames(); ++n) {
        out.samples[static_cast<size_t>(n)] =
            mono.samples[static_cast<size_t>(n - d)] +
            static_cast<float>(params.feedback) * out.samples[static_cast<size_t>(n - d)];
    }
    return out;
}

AudioBuffer reverb_branch(const AudioBuffer& mono, const ReverbParams& params) {
    if (mono.channels != 1) throw ArgumentError("reverb_branch: mono input required");
    // Classic Schroeder tunings at 44.1 kHz.
    constexpr std::array<int, 4> comb_delays = {1557, 1617, 1491, 1422};
    constexpr std::array<int, 2> allpass_delays = {225, 556};
    constexpr double allpass_g = 0.5;

    const int64_t n = mono.frames();
    AudioBuffer sum(n, 1, mono.sample_rate);
    for (int cd : comb_delays) {
        // Comb feedback for a T60 equal to decay_seconds at this loop length.
        const double loop_s = static_cast<double>(cd) / mono.sample_rate;
        const double g = std::pow(10.0, -3.0 * loop_s / params.decay_seconds);
        std::vector<float> line(static_cast<size_t>(cd), 0.0f);
        size_t pos = 0;
        for (int64_t i = 0; i < n; ++i) {
            const float delayed = line[pos];
            line[pos] = mono.samples[static_cast<size_t>(i)] + static_cast<float>(g) * delayed;
            pos = (pos + 1) % line.size();
            sum.samples[static_cast<size_t>(i)] += delayed;
        }
    }
    const float comb_norm = 1.0f / comb_delays.size();
    for (auto& s : sum.samples) s *= comb_norm;

    for (int ad : allpass_delays) {
        std::vector<float> line(static_cast<size_t>(ad), 0.0f);
        size_t pos = 0;
        for (int64_t i = 0; i < n; ++i) {
            const float x = sum.samples[static_cast<size_t>(i)];
            const float delayed = line[pos];
            const float y = delayed - static_cast<float>(allpass_g) * x;
            line[pos] = x + static_cast<float>(allpass_g) * y;
            pos = (pos + 1) % line.size();
            sum.samples[static_cast<size_t>(i)] = y;
        }
    }
    return sum;
}

AudioBuffer pan_mono_to_stereo(const AudioBuffer& mono, double pan) {
    if (mono.channels != 1) throw ArgumentError("pan_mono_to_stereo: mono input required");
    const float gl = static_cast<float>(std::min(1.0, 1.0 - pan));
    const float gr = static_cast<float>(std::min(1.0, 1.0 + pan));
    AudioBuffer out(mono.frames(), 2, mono.sample_rate);
    for (int64_t f = 0; f < mono.frames(); ++f) {
        const float x = mono.samples[static_cast<size_t>(f)];
        out.at(f, 0) = x * gl;
        out.at(f, 1) = x * gr;
    }
    return out;
}

AudioBuffer apply_fx_chain(const AudioBuffer& track, const FxParams& params) {
    params.validate();

    if (params.role == TrackRole::master) {
        if (track.channels != 2) throw ArgumentError("apply_fx_chain: master expects stereo");
        AudioBuffer out = track;
        for (int c = 0; c < 2; ++c) {
            std::vector<float> chan(static_cast<size_t>(track.frames()));
            for (int64_t f = 0; f < track.frames(); ++f)
                chan[static_cast<size_t>(f)] = track.at(f, c);
            for (const auto& band : params.eq)
                Biquad::design(band, track.sample_rate).process(chan);
            for (int64_t f = 0; f < track.frames(); ++f)
                out.at(f, c) = chan[static_cast<size_t>(f)];
        }
        return limit(out, params.limiter_threshold_db);
    }

    if (track.channels != 1) throw ArgumentError("apply_fx_chain: track roles expect mono");

    AudioBuffer stage = gain_db(track, params.gain_db);
    for (const auto& band : params.eq)
        Biquad::design(band, track.sample_rate).process(stage.samples);
    const AudioBuffer post_eq = stage;

    if (params.compressor) stage = compress(stage, *params.compressor);

    if (params.delay && params.delay->wet > 0.0) {
        const AudioBuffer wet = delay_branch(post_eq, *params.delay);
        const float w = static_cast<float>(params.delay->wet);
        for (size_t i = 0; i < stage.samples.size(); ++i) stage.samples[i] += w * wet.samples[i];
    }
    if (params.reverb && params.reverb->wet > 0.0) {
        const AudioBuffer wet = reverb_branch(post_eq, *params.reverb);
        const float w = static_cast<float>(params.reverb->wet);
        for (size_t i = 0; i < stage.samples.size(); ++i) stage.samples[i] += w * wet.samples[i];
    }

    return limit(pan_mono_to_stereo(stage, params.pan), params.limiter_threshold_db);
}

FxParams sample_fx_params(Rng rng, TrackRole role) {
    FxParams p;
    p.role = role;

    Rng eq_rng = rng.child("eq");
    p.eq = {
        EqBand{EqBandType::low_shelf, eq_rng.uniform_real(80.0, 300.0),
               eq_rng.uniform_real(-6.0, 6.0), 0.707},
        EqBand{EqBandType::peak, eq_rng.uniform_real(300.0, 5000.0),
               eq_rng.uniform_real(-6.0, 6.0), eq_rng.uniform_real(0.5, 2.0)},
        EqBand{EqBandType::high_shelf, eq_rng.uniform_real(3000.0, 12000.0),
               eq_rng.uniform_real(-6.0, 6.0), 0.707},
    };

    if (role == TrackRole::master) {
        p.gain_db = 0.0;
        p.limiter_threshold_db = rng.child("limiter").uniform_real(-1.0, -0.1);
        return p;
    }

    p.gain_db = rng.child("gain").uniform_real(-6.0, 3.0);

    Rng comp_rng = rng.child("comp");
    p.compressor = CompressorParams{
        comp_rng.uniform_real(-30.0, -10.0),
        comp_rng.uniform_real(1.5, 6.0),
        comp_rng.uniform_real(1.0, 30.0),
        comp_rng.uniform_real(50.0, 300.0),
    };

    p.pan = rng.child("pan").uniform_real(-0.5, 0.5);
    p.limiter_threshold_db = rng.child("limiter").uniform_real(-3.0, -0.5);

    Rng delay_rng = rng.child("delay");
    p.delay = DelayParams{
        delay_rng.uniform_real(60.0, 500.0),
        delay_rng.uniform_real(0.0, 0.5),
        delay_rng.uniform_real(0.0, 0.3),
    };

    Rng rev_rng = rng.child("reverb");
    p.reverb = ReverbParams{
        rev_rng.uniform_real(0.3, 2.0),
        rev_rng.uniform_real(0.0, 0.3),
    };
    return p;
}

}  // namespace dose

#include "dose/tokens.hpp"

#include <numeric>

#include "dose/errors.hpp"

namespace dose {

DelayedTokens apply_delay(const TokenGrid& grid) {
    grid.validate();
    const int T = grid.frames;
    const int K = grid.codebooks;

    DelayedTokens d;
    d.steps = T + K - 1;
    d.codebooks = K;
    d.source_frames = T;
    d.codebook_size = grid.config.codebook_size;
    d.tokens.assign(static_cast<size_t>(d.steps) * K, pad_token(d.codebook_size));
    for (int s = 0; s < d.steps; ++s)
        for (int k = 0; k < K; ++k)
            if (!d.is_pad_position(s, k)) d.at(s, k) = grid.at(s - k, k);
    return d;
}

TokenGrid remove_delay(const DelayedTokens& delayed, int frames) {
    const int K = delayed.codebooks;
    if (frames < 1 || K < 1) throw ArgumentError("remove_delay: bad shape");
    if (delayed.steps != frames + K - 1)
        throw ArgumentError("remove_delay: steps do not match frames + K - 1");

    const uint16_t pad = pad_token(delayed.codebook_size);
    TokenGrid grid;
    grid.frames = frames;
    grid.codebooks = K;
    grid.config.codebooks = K;
    grid.config.codebook_size = delayed.codebook_size;
    grid.tokens.resize(static_cast<size_t>(frames) * K);
    for (int t = 0; t < frames; ++t) {
        for (int k = 0; k < K; ++k) {
            const uint16_t v = delayed.at(t + k, k);
            if (v == pad)
                throw CorruptionError("remove_delay: PAD token inside the valid region");
            grid.at(t, k) = v;
        }
    }
    return grid;
}

std::vector<uint8_t> onset_mask(int frames, int codebooks) {
    if (frames < 0 || codebooks < 1) throw ArgumentError("onset_mask: bad shape");
    std::vector<uint8_t> mask(static_cast<size_t>(frames) * codebooks, 0);
    for (int t = 0; t < frames; ++t)
        for (int k = 0; k < codebooks; ++k)
            if (t + k <= codebooks - 1) mask[static_cast<size_t>(t) * codebooks + k] = 1;
    return mask;
}

int64_t SequenceLayout::loss_count() const {
    return std::accumulate(loss_mask.begin(), loss_mask.end(), int64_t{0});
}

int64_t SequenceLayout::onset_count() const {
    return std::accumulate(onset_mask.begin(), onset_mask.end(), int64_t{0});
}

TrainingSequence build_training_sequence(const TokenGrid& mixture, const TokenGrid& target,
                                         const SequenceOptions& options) {
    if (mixture.codebooks != target.codebooks)
        throw ArgumentError("build_training_sequence: codebook count mismatch");
    if (mixture.config.codebook_size != target.config.codebook_size)
        throw ArgumentError("build_training_sequence: codebook size mismatch");

    const DelayedTokens dm = apply_delay(mixture);
    const DelayedTokens dt = apply_delay(target);
    const int K = dm.codebooks;
    const int N = dm.codebook_size;

    TrainingSequence seq;
    SequenceLayout& lay = seq.layout;
    lay.cond_steps = dm.steps;
    lay.sep_step = dm.steps;
    lay.target_steps = dt.steps;
    lay.total_steps = dm.steps + 1 + dt.steps;
    lay.codebooks = K;
    lay.codebook_size = N;
    lay.target_frames = target.frames;

    seq.steps.resize(static_cast<size_t>(lay.total_steps) * K);
    for (int s = 0; s < dm.steps; ++s)
        for (int k = 0; k < K; ++k)
            seq.steps[static_cast<size_t>(s) * K + k] = dm.at(s, k);
    for (int k = 0; k < K; ++k)
        seq.steps[static_cast<size_t>(lay.sep_step) * K + k] = sep_token(N);
    const int target_base = lay.sep_step + 1;
    for (int s = 0; s < dt.steps; ++s)
        for (int k = 0; k < K; ++k)
            seq.steps[static_cast<size_t>(target_base + s) * K + k] = dt.at(s, k);

    lay.loss_mask.assign(static_cast<size_t>(lay.total_steps) * K, 0);
    lay.onset_mask.assign(static_cast<size_t>(lay.total_steps) * K, 0);
    for (int s = 0; s < dt.steps; ++s) {
        for (int k = 0; k < K; ++k) {
            if (dt.is_pad_position(s, k)) continue;
            const size_t pos = static_cast<size_t>(target_base + s) * K + k;
            lay.loss_mask[pos] = 1;
            if (!options.include_onset) continue;
            const bool onset = options.onset_coords == OnsetMaskCoords::delayed_steps
                                   ? s + k <= K - 1
                                   : (s - k) + k <= K - 1;  // pre-delay frame index s - k
            if (onset) lay.onset_mask[pos] = 1;
        }
    }
    return seq;
}

}  // namespace dose

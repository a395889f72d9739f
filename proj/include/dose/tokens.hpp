#pragma once

#include <cstdint>
#include <vector>

#include "dose/codec.hpp"

namespace dose {

// Data tokens occupy 1..N; PAD = N+1 and SEP = N+2 extend the alphabet per
// codebook. Nothing else is ever emitted.
inline uint16_t pad_token(int codebook_size) { return static_cast<uint16_t>(codebook_size + 1); }
inline uint16_t sep_token(int codebook_size) { return static_cast<uint16_t>(codebook_size + 2); }

// TokenGrid after the interleaving delay: codebook k (0-based) shifted down
// by k steps, PAD elsewhere. Height is frames + codebooks - 1.
struct DelayedTokens {
    int steps = 0;
    int codebooks = 0;
    int source_frames = 0;
    int codebook_size = 0;  // N
    std::vector<uint16_t> tokens;  // steps x codebooks

    uint16_t& at(int s, int k) { return tokens[static_cast<size_t>(s) * codebooks + k]; }
    uint16_t at(int s, int k) const { return tokens[static_cast<size_t>(s) * codebooks + k]; }

    // PAD-by-construction: s < k or s >= source_frames + k (0-based).
    bool is_pad_position(int s, int k) const { return s < k || s >= source_frames + k; }
};

DelayedTokens apply_delay(const TokenGrid& grid);

// Exact inverse on apply_delay's image. Throws CorruptionError if a PAD token
// sits inside the valid region.
TokenGrid remove_delay(const DelayedTokens& delayed, int frames);

// Boolean frames x codebooks matrix marking the transient-emphasis region:
// true iff t + k <= K + 1 in 1-based indices (t + k <= K - 1 zero-based).
// Cardinality is K(K+1)/2 whenever frames >= K.
std::vector<uint8_t> onset_mask(int frames, int codebooks);

// Which coordinates the onset formula is evaluated in: the delayed sequence's
// step index (default) or the pre-delay codec frame index.
enum class OnsetMaskCoords { delayed_steps, codec_frames };

struct SequenceOptions {
    OnsetMaskCoords onset_coords = OnsetMaskCoords::delayed_steps;
    bool include_onset = true;  // false drops the onset term (ablation)
};

// Step-token layout of one training example. Masks live in sequence-step
// coordinates and mark supervised token positions (the model predicts the
// token at a masked step from the previous step).
struct SequenceLayout {
    int cond_steps = 0;    // delayed mixture steps
    int sep_step = 0;      // index of the single separator step
    int target_steps = 0;  // delayed target steps
    int total_steps = 0;
    int codebooks = 0;
    int codebook_size = 0;  // N
    int target_frames = 0;
    std::vector<uint8_t> loss_mask;   // total_steps x codebooks
    std::vector<uint8_t> onset_mask;  // subset of loss_mask

    bool loss_at(int s, int k) const {
        return loss_mask[static_cast<size_t>(s) * codebooks + k] != 0;
    }
    bool onset_at(int s, int k) const {
        return onset_mask[static_cast<size_t>(s) * codebooks + k] != 0;
    }
    int64_t loss_count() const;
    int64_t onset_count() const;
};

struct TrainingSequence {
    std::vector<uint16_t> steps;  // total_steps x codebooks
    SequenceLayout layout;

    uint16_t at(int s, int k) const {
        return steps[static_cast<size_t>(s) * layout.codebooks + k];
    }
};

// Delayed mixture tokens, one SEP step, delayed target tokens; loss mask over
// the non-PAD target positions, onset mask per SequenceOptions.
TrainingSequence build_training_sequence(const TokenGrid& mixture, const TokenGrid& target,
                                         const SequenceOptions& options = {});

}  // namespace dose

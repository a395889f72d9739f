#include <doctest.h>

#include <set>

#include "dose/errors.hpp"
#include "dose/rng.hpp"
#include "dose/tokens.hpp"

using namespace dose;

namespace {

TokenGrid random_grid(Rng& rng, int frames, int codebooks, int codebook_size = 256) {
    TokenGrid g;
    g.frames = frames;
    g.codebooks = codebooks;
    g.config.codebooks = codebooks;
    g.config.codebook_size = codebook_size;
    g.tokens.resize(static_cast<size_t>(frames) * codebooks);
    for (auto& t : g.tokens)
        t = static_cast<uint16_t>(rng.uniform_int(1, codebook_size));
    return g;
}

}  // namespace

TEST_CASE("K=1 delay is the identity with no PAD") {
    Rng rng(1);
    const TokenGrid q = random_grid(rng, 7, 1);
    const DelayedTokens d = apply_delay(q);
    CHECK(d.steps == 7);
    for (int s = 0; s < 7; ++s) CHECK(d.at(s, 0) == q.at(s, 0));
    const TokenGrid back = remove_delay(d, 7);
    CHECK(back.tokens == q.tokens);
}

TEST_CASE("worked example: T=3, K=2") {
    TokenGrid q;
    q.frames = 3;
    q.codebooks = 2;
    q.config.codebooks = 2;
    q.config.codebook_size = 256;
    // rows (a_t, b_t), distinguishable values
    q.tokens = {11, 21, 12, 22, 13, 23};
    const DelayedTokens d = apply_delay(q);
    const uint16_t P = pad_token(256);
    REQUIRE(d.steps == 4);
    CHECK(d.at(0, 0) == 11);
    CHECK(d.at(0, 1) == P);
    CHECK(d.at(1, 0) == 12);
    CHECK(d.at(1, 1) == 21);
    CHECK(d.at(2, 0) == 13);
    CHECK(d.at(2, 1) == 22);
    CHECK(d.at(3, 0) == P);
    CHECK(d.at(3, 1) == 23);
}

TEST_CASE("delayed grids have T+K-1 steps and exactly K(K-1) PAD entries") {
    Rng rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        const int T = static_cast<int>(rng.uniform_int(1, 40));
        const int K = static_cast<int>(rng.uniform_int(1, 8));
        const TokenGrid q = random_grid(rng, T, K);
        const DelayedTokens d = apply_delay(q);
        CHECK(d.steps == T + K - 1);
        int pads = 0;
        for (int s = 0; s < d.steps; ++s)
            for (int k = 0; k < K; ++k)
                if (d.at(s, k) == pad_token(256)) {
                    ++pads;
                    CHECK(d.is_pad_position(s, k));
                }
        CHECK(pads == K * (K - 1));
    }
}

TEST_CASE("delay round trip is exact for random grids") {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const int T = static_cast<int>(rng.uniform_int(1, 64));
        const int K = static_cast<int>(rng.uniform_int(1, 8));
        const TokenGrid q = random_grid(rng, T, K);
        const TokenGrid back = remove_delay(apply_delay(q), T);
        CHECK(back.tokens == q.tokens);
    }
}

TEST_CASE("tampered PAD inside the valid region raises CorruptionError") {
    Rng rng(4);
    const TokenGrid q = random_grid(rng, 10, 3);
    DelayedTokens d = apply_delay(q);
    d.at(5, 1) = pad_token(256);  // valid position for k=1 at T=10
    CHECK_THROWS_AS((void)remove_delay(d, 10), CorruptionError);
}

TEST_CASE("remove_delay validates the shape") {
    Rng rng(5);
    const DelayedTokens d = apply_delay(random_grid(rng, 10, 3));
    CHECK_THROWS_AS((void)remove_delay(d, 11), ArgumentError);
}

TEST_CASE("onset mask follows t + k <= K + 1 (1-based)") {
    SUBCASE("cardinality is K(K+1)/2 whenever T >= K") {
        for (int K = 1; K <= 8; ++K) {
            for (int T : {K, K + 1, 10, 100}) {
                const auto mask = onset_mask(T, K);
                int count = 0;
                for (uint8_t m : mask) count += m;
                CHECK(count == K * (K + 1) / 2);
            }
        }
    }
    SUBCASE("K=4 mask equals the hand-enumerated set {(t,k): t+k <= 5}") {
        const int K = 4, T = 8;
        const auto mask = onset_mask(T, K);
        std::set<std::pair<int, int>> expected;  // 1-based
        for (int t = 1; t <= T; ++t)
            for (int k = 1; k <= K; ++k)
                if (t + k <= K + 1) expected.insert({t, k});
        CHECK(expected.size() == 10);
        for (int t = 0; t < T; ++t)
            for (int k = 0; k < K; ++k)
                CHECK((mask[static_cast<size_t>(t) * K + k] != 0) ==
                      (expected.count({t + 1, k + 1}) == 1));
    }
    SUBCASE("first row has K true entries; row t=K has only k=1") {
        const int K = 5, T = 10;
        const auto mask = onset_mask(T, K);
        for (int k = 0; k < K; ++k) CHECK(mask[static_cast<size_t>(k)] == 1);
        for (int k = 0; k < K; ++k)
            CHECK(mask[static_cast<size_t>(K - 1) * K + k] == (k == 0 ? 1 : 0));
    }
    SUBCASE("K=1 marks only the first frame") {
        const auto mask = onset_mask(5, 1);
        CHECK(mask[0] == 1);
        for (size_t i = 1; i < mask.size(); ++i) CHECK(mask[i] == 0);
    }
}

TEST_CASE("build_training_sequence layout and masks") {
    Rng rng(6);
    const int K = 4, T_mix = 20, T_tgt = 100;
    const TokenGrid mix = random_grid(rng, T_mix, K);
    const TokenGrid tgt = random_grid(rng, T_tgt, K);
    const TrainingSequence seq = build_training_sequence(mix, tgt);
    const SequenceLayout& lay = seq.layout;

    CHECK(lay.total_steps == (T_mix + K - 1) + 1 + (T_tgt + K - 1));
    CHECK(lay.sep_step == T_mix + K - 1);
    CHECK(lay.loss_count() == static_cast<int64_t>(T_tgt) * K);

    SUBCASE("onset count matches a brute-force enumeration oracle") {
        // Enumerate delayed-coordinate onset positions directly: step s,
        // codebook k (0-based) with s+k <= K-1, restricted to non-PAD
        // positions of a T_tgt-frame delayed grid (s >= k).
        int expected = 0;
        for (int s = 0; s < T_tgt + K - 1; ++s)
            for (int k = 0; k < K; ++k)
                if (s + k <= K - 1 && s >= k && s < T_tgt + k) ++expected;
        CHECK(expected == 6);  // K=4: 10 formula hits minus 4 PAD overlaps
        CHECK(lay.onset_count() == expected);
    }

    SUBCASE("every onset entry is also a loss entry") {
        for (int s = 0; s < lay.total_steps; ++s)
            for (int k = 0; k < K; ++k)
                if (lay.onset_at(s, k)) CHECK(lay.loss_at(s, k));
    }

    SUBCASE("loss mask covers exactly the non-PAD target region") {
        for (int s = 0; s < lay.total_steps; ++s) {
            for (int k = 0; k < K; ++k) {
                const bool in_target = s > lay.sep_step;
                if (!in_target) {
                    CHECK_FALSE(lay.loss_at(s, k));
                } else {
                    const int local = s - lay.sep_step - 1;
                    const bool pad = local < k || local >= T_tgt + k;
                    CHECK(lay.loss_at(s, k) == !pad);
                }
            }
        }
    }

    SUBCASE("pre-delay coordinate mode marks the full K(K+1)/2 set") {
        SequenceOptions opts;
        opts.onset_coords = OnsetMaskCoords::codec_frames;
        const TrainingSequence alt = build_training_sequence(mix, tgt, opts);
        CHECK(alt.layout.onset_count() == K * (K + 1) / 2);
    }

    SUBCASE("ablation clears the onset mask") {
        SequenceOptions opts;
        opts.include_onset = false;
        const TrainingSequence alt = build_training_sequence(mix, tgt, opts);
        CHECK(alt.layout.onset_count() == 0);
    }

    SUBCASE("vocabulary partition: data in [1,N], PAD=N+1 only at pad slots, SEP=N+2 only at sep") {
        const uint16_t P = pad_token(256), S = sep_token(256);
        for (int s = 0; s < lay.total_steps; ++s) {
            for (int k = 0; k < K; ++k) {
                const uint16_t v = seq.at(s, k);
                CHECK(v >= 1);
                CHECK(v <= S);
                if (v == S) CHECK(s == lay.sep_step);
                if (v == P) {
                    const int local = s < lay.sep_step ? s : s - lay.sep_step - 1;
                    const int frames = s < lay.sep_step ? T_mix : T_tgt;
                    CHECK((local < k || local >= frames + k));
                }
            }
        }
    }
}

TEST_CASE("build_training_sequence rejects mismatched grids") {
    Rng rng(7);
    const TokenGrid a = random_grid(rng, 10, 4);
    const TokenGrid b = random_grid(rng, 10, 3);
    CHECK_THROWS_AS((void)build_training_sequence(a, b), ArgumentError);
    TokenGrid c = random_grid(rng, 10, 4, 128);
    CHECK_THROWS_AS((void)build_training_sequence(a, c), ArgumentError);
}

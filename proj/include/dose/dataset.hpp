#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dose/audio.hpp"
#include "dose/pattern.hpp"
#include "dose/rng.hpp"

namespace dose {

enum class Instrument { bass, piano, guitar, vocal };

inline constexpr std::array<Instrument, 4> kInstruments = {Instrument::bass, Instrument::piano,
                                                           Instrument::guitar, Instrument::vocal};

const char* instrument_name(Instrument i);
Instrument instrument_from_name(const std::string& name);

// Source material: one-shots per drum class and loops per instrument, loaded
// from a directory with kick/ snare/ hihat/ bass/ piano/ guitar/ vocal/
// subdirectories of WAV files (file order is name-sorted for determinism).
struct SampleLibrary {
    std::map<DrumClass, std::vector<AudioBuffer>> oneshots;
    std::map<Instrument, std::vector<AudioBuffer>> loops;

    static SampleLibrary load(const std::filesystem::path& dir);
    void require_nonempty() const;  // ArgumentError when a class has no entries
};

struct WeightPair {
    double w1 = 0.8;
    double w2 = 0.2;
};

inline constexpr std::array<WeightPair, 3> kLayerWeights = {WeightPair{0.8, 0.2},
                                                            WeightPair{0.7, 0.3},
                                                            WeightPair{0.6, 0.4}};

// w1*a + w2*b with zero-padding to the longer input. The pair must be one of
// kLayerWeights. Layering a buffer with itself is exactly the identity.
AudioBuffer layer_oneshots(const AudioBuffer& a, const AudioBuffer& b, WeightPair weights);

// 30% chance of absence; otherwise a random 4 s or 2 s slice (2 s slices are
// repeated to fill 4 s) pitch-shifted by an integer semitone amount: bass in
// [-6, +2], everything else in [-12, +12].
std::optional<AudioBuffer> prepare_instrument_loop(const AudioBuffer& loop, Rng rng,
                                                   Instrument instrument);

struct MixturePair {
    AudioBuffer mixture;                       // stereo, exactly 4 s
    std::map<DrumClass, AudioBuffer> oneshots;  // mono, pre-mix ground truth
    DrumPattern pattern;
    uint64_t seed = 0;
    std::set<Instrument> included_instruments;
    double master_limiter_db = 0.0;               // provenance for the peak contract
    std::map<std::string, uint64_t> fx_seeds;     // per-track substream seeds
};

// Full generation flow for one pair: pattern, optional per-class layering
// (probability 0.5, weights uniform over kLayerWeights), rendering,
// instrument preparation, per-track FX, summation, mastering.
MixturePair generate_pair(Rng rng, const SampleLibrary& library);

// One manifest line per generated pair.
struct PairRecord {
    int index = 0;
    std::string split;
    uint64_t seed = 0;
    std::string mixture_path;                       // relative to the dataset dir
    std::map<std::string, std::string> oneshot_paths;
    std::map<std::string, std::vector<int>> pattern_onsets;
    std::vector<std::string> instruments;
    std::map<std::string, uint64_t> fx_seeds;
    double master_limiter_db = 0.0;
};

void write_manifest(const std::vector<PairRecord>& records, const std::filesystem::path& path);
std::vector<PairRecord> read_manifest(const std::filesystem::path& path);

struct GenDatasetOptions {
    std::filesystem::path library_dir;
    std::filesystem::path out_dir;
    int count = 0;
    uint64_t seed = 0;
    std::string split = "train";
};

// Generates options.count pairs, exports WAVs under out_dir and writes
// out_dir/manifest.jsonl. Returns the records. progress (optional) is called
// once per finished pair from worker threads.
std::vector<PairRecord> gen_dataset(const GenDatasetOptions& options,
                                    const std::function<void(const PairRecord&)>& progress = {});

// The per-pair seed used by gen_dataset; exposed so a manifest can be
// regenerated without re-deriving the whole run.
uint64_t pair_seed(uint64_t dataset_seed, const std::string& split, int index);

}  // namespace dose

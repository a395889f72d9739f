#include "dose/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>

#include <json.hpp>

#include "dose/dsp.hpp"
#include "dose/errors.hpp"
#include "dose/pitch.hpp"
#include "dose/threading.hpp"
#include "dose/wav.hpp"

namespace dose {

using nlohmann::json;

const char* instrument_name(Instrument i) {
    switch (i) {
        case Instrument::bass: return "bass";
        case Instrument::piano: return "piano";
        case Instrument::guitar: return "guitar";
        case Instrument::vocal: return "vocal";
    }
    return "?";
}

Instrument instrument_from_name(const std::string& name) {
    for (Instrument i : kInstruments)
        if (name == instrument_name(i)) return i;
    throw ArgumentError("unknown instrument: " + name);
}

SampleLibrary SampleLibrary::load(const std::filesystem::path& dir) {
    auto load_dir = [&](const std::string& sub) {
        std::vector<std::filesystem::path> files;
        const auto subdir = dir / sub;
        if (std::filesystem::is_directory(subdir)) {
            for (const auto& e : std::filesystem::directory_iterator(subdir))
                if (e.is_regular_file() && e.path().extension() == ".wav") files.push_back(e.path());
        }
        std::sort(files.begin(), files.end());
        std::vector<AudioBuffer> out;
        out.reserve(files.size());
        for (const auto& f : files) out.push_back(downmix_mono(load_wav(f)));
        return out;
    };

    SampleLibrary lib;
    for (DrumClass c : kDrumClasses) lib.oneshots[c] = load_dir(drum_class_name(c));
    for (Instrument i : kInstruments) lib.loops[i] = load_dir(instrument_name(i));
    return lib;
}

void SampleLibrary::require_nonempty() const {
    for (DrumClass c : kDrumClasses)
        if (oneshots.find(c) == oneshots.end() || oneshots.at(c).empty())
            throw ArgumentError(std::string("library has no one-shots for ") + drum_class_name(c));
    for (Instrument i : kInstruments)
        if (loops.find(i) == loops.end() || loops.at(i).empty())
            throw ArgumentError(std::string("library has no loops for ") + instrument_name(i));
}

AudioBuffer layer_oneshots(const AudioBuffer& a, const AudioBuffer& b, WeightPair weights) {
    if (a.channels != 1 || b.channels != 1)
        throw ArgumentError("layer_oneshots: mono inputs required");
    const bool allowed = std::any_of(kLayerWeights.begin(), kLayerWeights.end(), [&](WeightPair w) {
        return std::abs(w.w1 - weights.w1) < 1e-9 && std::abs(w.w2 - weights.w2) < 1e-9;
    });
    if (!allowed) throw ArgumentError("layer_oneshots: weight pair not in the allowed set");

    const int64_t frames = std::max(a.frames(), b.frames());
    AudioBuffer out(frames, 1);
    for (int64_t i = 0; i < frames; ++i) {
        const double av = i < a.frames() ? a.samples[static_cast<size_t>(i)] : 0.0;
        const double bv = i < b.frames() ? b.samples[static_cast<size_t>(i)] : 0.0;
        // Lerp form: exact identity when a == b, exact w1*a against silence.
        out.samples[static_cast<size_t>(i)] = static_cast<float>(bv + weights.w1 * (av - bv));
    }
    return out;
}

std::optional<AudioBuffer> prepare_instrument_loop(const AudioBuffer& loop, Rng rng,
                                                   Instrument instrument) {
    if (loop.channels != 1) throw ArgumentError("prepare_instrument_loop: mono input required");
    if (rng.child("exclude").uniform() < 0.30) return std::nullopt;

    const bool full_length = rng.child("seglen").uniform() < 0.5;
    const int64_t seg_frames = full_length ? kLoopFrames : kLoopFrames / 2;
    const int64_t max_start = std::max<int64_t>(0, loop.frames() - seg_frames);
    const int64_t start = max_start > 0 ? rng.child("start").uniform_int(0, max_start) : 0;
    AudioBuffer seg = slice(loop, start, seg_frames);
    if (!full_length) {
        AudioBuffer doubled(kLoopFrames, 1);
        std::copy(seg.samples.begin(), seg.samples.end(), doubled.samples.begin());
        std::copy(seg.samples.begin(), seg.samples.end(),
                  doubled.samples.begin() + seg_frames);
        seg = std::move(doubled);
    }

    const int semis = instrument == Instrument::bass
                          ? static_cast<int>(rng.child("pitch").uniform_int(-6, 2))
                          : static_cast<int>(rng.child("pitch").uniform_int(-12, 12));
    return pitch_shift(seg, semis);
}

MixturePair generate_pair(Rng rng, const SampleLibrary& library) {
    library.require_nonempty();

    MixturePair pair;
    pair.seed = rng.seed();
    pair.pattern = generate_drum_pattern(rng.child("pattern"));

    for (DrumClass c : kDrumClasses) {
        Rng pick = rng.child(std::string("oneshot/") + drum_class_name(c));
        const auto& pool = library.oneshots.at(c);
        const AudioBuffer& first = pool[static_cast<size_t>(
            pick.uniform_int(0, static_cast<int64_t>(pool.size()) - 1))];
        if (pick.uniform() < 0.5) {
            const AudioBuffer& second = pool[static_cast<size_t>(
                pick.uniform_int(0, static_cast<int64_t>(pool.size()) - 1))];
            const WeightPair w = kLayerWeights[static_cast<size_t>(pick.uniform_int(0, 2))];
            pair.oneshots[c] = layer_oneshots(first, second, w);
        } else {
            pair.oneshots[c] = first;
        }
    }

    auto stems = render_drum_loop(pair.pattern, pair.oneshots);

    std::vector<std::pair<std::string, AudioBuffer>> tracks;
    for (DrumClass c : kDrumClasses)
        tracks.emplace_back(drum_class_name(c), std::move(stems.at(c)));

    for (Instrument inst : kInstruments) {
        Rng sub = rng.child(std::string("inst/") + instrument_name(inst));
        const auto& pool = library.loops.at(inst);
        const AudioBuffer& loop = pool[static_cast<size_t>(
            sub.child("select").uniform_int(0, static_cast<int64_t>(pool.size()) - 1))];
        if (auto prepared = prepare_instrument_loop(loop, sub, inst)) {
            pair.included_instruments.insert(inst);
            tracks.emplace_back(instrument_name(inst), std::move(*prepared));
        }
    }

    std::vector<AudioBuffer> mixed;
    mixed.reserve(tracks.size());
    for (auto& [name, track] : tracks) {
        Rng fx_rng = rng.child("fx/" + name);
        pair.fx_seeds[name] = fx_rng.seed();
        const bool is_drum = name == "kick" || name == "snare" || name == "hihat";
        const FxParams params =
            sample_fx_params(fx_rng, is_drum ? TrackRole::drum : TrackRole::instrument);
        mixed.push_back(apply_fx_chain(track, params));
    }

    Rng master_rng = rng.child("fx/master");
    pair.fx_seeds["master"] = master_rng.seed();
    const FxParams master = sample_fx_params(master_rng, TrackRole::master);
    pair.master_limiter_db = master.limiter_threshold_db;
    pair.mixture = apply_fx_chain(mix_sum(mixed), master);
    return pair;
}

namespace {

json record_to_json(const PairRecord& r) {
    json j;
    j["index"] = r.index;
    j["split"] = r.split;
    j["seed"] = r.seed;
    j["mixture"] = r.mixture_path;
    j["oneshots"] = r.oneshot_paths;
    j["pattern"] = r.pattern_onsets;
    j["instruments"] = r.instruments;
    j["fx_seeds"] = r.fx_seeds;
    j["master_limiter_db"] = r.master_limiter_db;
    return j;
}

PairRecord record_from_json(const json& j) {
    PairRecord r;
    r.index = j.at("index").get<int>();
    r.split = j.at("split").get<std::string>();
    r.seed = j.at("seed").get<uint64_t>();
    r.mixture_path = j.at("mixture").get<std::string>();
    r.oneshot_paths = j.at("oneshots").get<std::map<std::string, std::string>>();
    r.pattern_onsets = j.at("pattern").get<std::map<std::string, std::vector<int>>>();
    r.instruments = j.at("instruments").get<std::vector<std::string>>();
    r.fx_seeds = j.at("fx_seeds").get<std::map<std::string, uint64_t>>();
    r.master_limiter_db = j.at("master_limiter_db").get<double>();
    return r;
}

}  // namespace

void write_manifest(const std::vector<PairRecord>& records, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("write_manifest: cannot open " + path.string());
    for (const auto& r : records) os << record_to_json(r).dump() << '\n';
    if (!os) throw IoError("write_manifest: write failed for " + path.string());
}

std::vector<PairRecord> read_manifest(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("read_manifest: cannot open " + path.string());
    std::vector<PairRecord> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        out.push_back(record_from_json(json::parse(line)));
    }
    return out;
}

uint64_t pair_seed(uint64_t dataset_seed, const std::string& split, int index) {
    return Rng(dataset_seed).child(split, static_cast<uint64_t>(index)).seed();
}

std::vector<PairRecord> gen_dataset(const GenDatasetOptions& options,
                                    const std::function<void(const PairRecord&)>& progress) {
    if (options.count <= 0) throw ArgumentError("gen_dataset: count must be positive");
    const SampleLibrary library = SampleLibrary::load(options.library_dir);
    library.require_nonempty();

    const auto out = options.out_dir;
    std::filesystem::create_directories(out / "mixtures");
    for (DrumClass c : kDrumClasses)
        std::filesystem::create_directories(out / "oneshots" / drum_class_name(c));

    std::vector<PairRecord> records(static_cast<size_t>(options.count));
    std::mutex progress_mu;
    parallel_for(options.count, [&](int64_t i) {
        const uint64_t seed = pair_seed(options.seed, options.split, static_cast<int>(i));
        const MixturePair pair = generate_pair(Rng(seed), library);

        char stem[64];
        std::snprintf(stem, sizeof stem, "%s_%06d", options.split.c_str(), static_cast<int>(i));

        PairRecord r;
        r.index = static_cast<int>(i);
        r.split = options.split;
        r.seed = seed;
        r.mixture_path = std::string("mixtures/") + stem + ".wav";
        save_wav(pair.mixture, out / r.mixture_path);
        for (DrumClass c : kDrumClasses) {
            const std::string rel =
                std::string("oneshots/") + drum_class_name(c) + "/" + stem + ".wav";
            save_wav(pair.oneshots.at(c), out / rel);
            r.oneshot_paths[drum_class_name(c)] = rel;
            r.pattern_onsets[drum_class_name(c)] = pair.pattern.onsets.at(c);
        }
        for (Instrument inst : pair.included_instruments)
            r.instruments.push_back(instrument_name(inst));
        r.fx_seeds = pair.fx_seeds;
        r.master_limiter_db = pair.master_limiter_db;
        records[static_cast<size_t>(i)] = r;
        if (progress) {
            std::lock_guard lock(progress_mu);
            progress(r);
        }
    });

    write_manifest(records, out / "manifest.jsonl");
    return records;
}

}  // namespace dose

#include "dose/codec.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

#include "dose/errors.hpp"
#include "dose/rng.hpp"

namespace dose {
namespace {

// Codebook entry spread, matched to typical per-dimension latent scale of
// program material (orthonormal analysis rows map sample rms to latent rms).
constexpr double kEntrySigma = 0.15;

void write_u32(std::ofstream& os, uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), 4);
}

uint32_t read_u32(std::ifstream& is) {
    uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 4);
    return v;
}

}  // namespace

void CodecConfig::validate() const {
    if (codebooks < 1) throw ArgumentError("codec: K must be >= 1");
    if (codebook_size < 2 || codebook_size > 65000)
        throw ArgumentError("codec: N must be in [2, 65000]");
    if (hop < 1 || frame_rate < 1 || hop * frame_rate != kSampleRate)
        throw ArgumentError("codec: hop * frame_rate must equal 44100");
    if (latent_dim < codebooks)
        throw ArgumentError("codec: latent_dim must be >= K (one subspace per stage)");
    if (latent_dim > hop) throw ArgumentError("codec: latent_dim must be <= hop");
}

void TokenGrid::validate() const {
    if (frames < 0 || codebooks < 1) throw ArgumentError("token grid: bad shape");
    if (tokens.size() != static_cast<size_t>(frames) * codebooks)
        throw ArgumentError("token grid: size mismatch");
    for (uint16_t v : tokens)
        if (v < 1 || v > config.codebook_size)
            throw ArgumentError("token grid: value outside [1, N]");
}

Codec::Codec(CodecConfig config) : config_(config) {
    config_.validate();
    Rng root(config_.seed);

    const int d = config_.latent_dim;
    const int hop = config_.hop;

    // Seeded Gaussian analysis matrix, rows orthonormalized (modified
    // Gram-Schmidt).
    Rng arng = root.child("analysis");
    analysis_.resize(d, hop);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < hop; ++j) analysis_(i, j) = static_cast<float>(arng.normal());
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < i; ++j)
            analysis_.row(i) -= analysis_.row(i).dot(analysis_.row(j)) * analysis_.row(j);
        analysis_.row(i).normalize();
    }

    // Stage k's entries live in latent dims [k*d/K, (k+1)*d/K). Entry 0 is the
    // zero vector, which makes per-stage residual norms non-increasing and
    // gives silent frames a canonical index chain. Disjoint subspaces make
    // re-quantizing a decoded latent reproduce its indices exactly.
    const int K = config_.codebooks;
    const int N = config_.codebook_size;
    codebooks_.resize(static_cast<size_t>(K));
    for (int k = 0; k < K; ++k) {
        Rng crng = root.child("codebook", static_cast<uint64_t>(k));
        Eigen::MatrixXf& book = codebooks_[static_cast<size_t>(k)];
        book = Eigen::MatrixXf::Zero(N, d);
        const int lo = k * d / K;
        const int hi = (k + 1) * d / K;
        for (int n = 1; n < N; ++n)
            for (int j = lo; j < hi; ++j)
                book(n, j) = static_cast<float>(kEntrySigma * crng.normal());
    }
}

Eigen::VectorXf Codec::project_frame(const float* samples, int64_t available) const {
    Eigen::VectorXf frame = Eigen::VectorXf::Zero(config_.hop);
    const int64_t n = std::min<int64_t>(config_.hop, std::max<int64_t>(0, available));
    for (int64_t i = 0; i < n; ++i) frame[static_cast<Eigen::Index>(i)] = samples[i];
    return analysis_ * frame;
}

std::vector<uint16_t> Codec::quantize(const Eigen::VectorXf& latent) const {
    std::vector<uint16_t> indices(static_cast<size_t>(config_.codebooks));
    Eigen::VectorXf residual = latent;
    for (int k = 0; k < config_.codebooks; ++k) {
        const Eigen::MatrixXf& book = codebooks_[static_cast<size_t>(k)];
        // argmin ||r - c||^2 == argmin (||c||^2 - 2 r.c)
        const Eigen::VectorXf scores =
            book.rowwise().squaredNorm() - 2.0f * (book * residual);
        Eigen::Index best = 0;
        scores.minCoeff(&best);
        indices[static_cast<size_t>(k)] = static_cast<uint16_t>(best + 1);  // 1-based
        residual -= book.row(best);
    }
    return indices;
}

Eigen::VectorXf Codec::reconstruct_latent(const std::vector<uint16_t>& indices) const {
    Eigen::VectorXf latent = Eigen::VectorXf::Zero(config_.latent_dim);
    for (int k = 0; k < config_.codebooks; ++k) {
        const uint16_t idx = indices[static_cast<size_t>(k)];
        if (idx < 1 || idx > config_.codebook_size)
            throw ArgumentError("codec: token outside [1, N]");
        latent += codebooks_[static_cast<size_t>(k)].row(idx - 1);
    }
    return latent;
}

TokenGrid Codec::encode(const AudioBuffer& mono) const {
    std::vector<std::vector<float>> unused;
    return encode_with_trace(mono, unused);
}

TokenGrid Codec::encode_with_trace(const AudioBuffer& mono,
                                   std::vector<std::vector<float>>& residual_norms) const {
    if (mono.channels != 1) throw ArgumentError("codec encode: mono input required");
    if (mono.sample_rate != kSampleRate)
        throw ArgumentError("codec encode: 44100 Hz input required");

    const int64_t len = mono.frames();
    const int T = static_cast<int>((len + config_.hop - 1) / config_.hop);

    TokenGrid grid;
    grid.frames = T;
    grid.codebooks = config_.codebooks;
    grid.config = config_;
    grid.tokens.resize(static_cast<size_t>(T) * config_.codebooks);
    residual_norms.assign(static_cast<size_t>(T), {});

    for (int t = 0; t < T; ++t) {
        const int64_t start = static_cast<int64_t>(t) * config_.hop;
        Eigen::VectorXf residual = project_frame(mono.samples.data() + start, len - start);
        auto& norms = residual_norms[static_cast<size_t>(t)];
        norms.push_back(residual.norm());
        for (int k = 0; k < config_.codebooks; ++k) {
            const Eigen::MatrixXf& book = codebooks_[static_cast<size_t>(k)];
            const Eigen::VectorXf scores =
                book.rowwise().squaredNorm() - 2.0f * (book * residual);
            Eigen::Index best = 0;
            scores.minCoeff(&best);
            grid.at(t, k) = static_cast<uint16_t>(best + 1);
            residual -= book.row(best);
            norms.push_back(residual.norm());
        }
    }
    return grid;
}

AudioBuffer Codec::decode(const TokenGrid& grid) const {
    if (grid.codebooks != config_.codebooks)
        throw ArgumentError("codec decode: codebook count mismatch");
    grid.validate();

    AudioBuffer out(static_cast<int64_t>(grid.frames) * config_.hop, 1);
    std::vector<uint16_t> indices(static_cast<size_t>(config_.codebooks));
    for (int t = 0; t < grid.frames; ++t) {
        for (int k = 0; k < config_.codebooks; ++k) indices[static_cast<size_t>(k)] = grid.at(t, k);
        const Eigen::VectorXf frame = analysis_.transpose() * reconstruct_latent(indices);
        std::memcpy(out.samples.data() + static_cast<size_t>(t) * config_.hop, frame.data(),
                    sizeof(float) * static_cast<size_t>(config_.hop));
    }
    return out;
}

namespace {
constexpr char kTokenMagic[8] = {'D', 'O', 'S', 'E', 'T', 'O', 'K', '1'};
}

void save_tokens(const TokenGrid& grid, const std::filesystem::path& path) {
    grid.validate();
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("save_tokens: cannot open " + path.string());
    os.write(kTokenMagic, sizeof kTokenMagic);
    write_u32(os, static_cast<uint32_t>(grid.codebooks));
    write_u32(os, static_cast<uint32_t>(grid.config.codebook_size));
    write_u32(os, static_cast<uint32_t>(grid.config.frame_rate));
    write_u32(os, static_cast<uint32_t>(grid.frames));
    os.write(reinterpret_cast<const char*>(grid.tokens.data()),
             static_cast<std::streamsize>(grid.tokens.size() * sizeof(uint16_t)));
    if (!os) throw IoError("save_tokens: write failed for " + path.string());
}

TokenGrid load_tokens(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("load_tokens: cannot open " + path.string());
    char magic[8];
    is.read(magic, sizeof magic);
    if (!is || std::memcmp(magic, kTokenMagic, sizeof magic) != 0)
        throw FormatError("load_tokens: bad magic in " + path.string());

    TokenGrid grid;
    grid.codebooks = static_cast<int>(read_u32(is));
    grid.config.codebooks = grid.codebooks;
    grid.config.codebook_size = static_cast<int>(read_u32(is));
    grid.config.frame_rate = static_cast<int>(read_u32(is));
    if (grid.config.frame_rate >= 1 && kSampleRate % grid.config.frame_rate == 0)
        grid.config.hop = kSampleRate / grid.config.frame_rate;
    grid.frames = static_cast<int>(read_u32(is));
    if (!is || grid.frames < 0 || grid.codebooks < 1)
        throw FormatError("load_tokens: bad header in " + path.string());
    grid.tokens.resize(static_cast<size_t>(grid.frames) * grid.codebooks);
    is.read(reinterpret_cast<char*>(grid.tokens.data()),
            static_cast<std::streamsize>(grid.tokens.size() * sizeof(uint16_t)));
    if (!is) throw IoError("load_tokens: truncated token data in " + path.string());
    grid.validate();
    return grid;
}

}  // namespace dose

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Dense>

#include "dose/audio.hpp"

namespace dose {

// Waveform <-> discrete-token interface of a residual-VQ codec. The analysis
// basis and codebooks are frozen at construction from the seed; nothing is
// trained.
struct CodecConfig {
    int codebooks = 4;       // K
    int codebook_size = 256; // N
    int frame_rate = 100;    // f_c, frames per second
    int hop = 441;           // samples per frame, hop * frame_rate == 44100
    int latent_dim = 32;
    uint64_t seed = 0xD05EC0DEC5ull;

    void validate() const;
    bool operator==(const CodecConfig&) const = default;
};

// Discrete code grid: frames x codebooks, values 1..N.
struct TokenGrid {
    int frames = 0;
    int codebooks = 0;
    std::vector<uint16_t> tokens;  // row-major (frame, codebook)
    CodecConfig config;

    uint16_t& at(int t, int k) { return tokens[static_cast<size_t>(t) * codebooks + k]; }
    uint16_t at(int t, int k) const { return tokens[static_cast<size_t>(t) * codebooks + k]; }

    void validate() const;  // shape and 1..N range
};

class Codec {
  public:
    explicit Codec(CodecConfig config);

    const CodecConfig& config() const { return config_; }

    // Mono 44.1 kHz in; one frame per hop (tail zero-padded), K indices per
    // frame from residual quantization.
    TokenGrid encode(const AudioBuffer& mono) const;

    // Same as encode but also reports the residual norm after each stage,
    // frames x (K+1) with the pre-quantization norm first.
    TokenGrid encode_with_trace(const AudioBuffer& mono,
                                std::vector<std::vector<float>>& residual_norms) const;

    // Sums the selected codebook vectors per frame and back-projects through
    // the transposed analysis matrix; output length frames * hop.
    AudioBuffer decode(const TokenGrid& grid) const;

    // Latent-space pieces, exposed for the quantization property tests.
    Eigen::VectorXf project_frame(const float* samples, int64_t available) const;
    std::vector<uint16_t> quantize(const Eigen::VectorXf& latent) const;
    Eigen::VectorXf reconstruct_latent(const std::vector<uint16_t>& indices) const;

    const Eigen::MatrixXf& analysis() const { return analysis_; }

  private:
    CodecConfig config_;
    Eigen::MatrixXf analysis_;               // latent_dim x hop, orthonormal rows
    std::vector<Eigen::MatrixXf> codebooks_; // K matrices, N x latent_dim
};

// Token file: magic + (K, N, f_c, T) header + row-major uint16 indices.
void save_tokens(const TokenGrid& grid, const std::filesystem::path& path);
TokenGrid load_tokens(const std::filesystem::path& path);

}  // namespace dose

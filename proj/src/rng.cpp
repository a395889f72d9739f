#include "dose/rng.hpp"

#include <algorithm>
#include <cmath>

#include "dose/errors.hpp"

namespace dose {
namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace

Rng Rng::child(std::string_view label, uint64_t index) const {
    uint64_t h = mix64(seed_ + kGolden);
    h = mix64(h ^ fnv1a(label));
    h = mix64(h ^ (index + kGolden));
    return Rng(h);
}

uint64_t Rng::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int64_t Rng::uniform_int(int64_t lo, int64_t hi) {
    if (lo > hi) throw ArgumentError("uniform_int: lo > hi");
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<int64_t>(next_u64());  // full 64-bit range
    const auto wide = static_cast<unsigned __int128>(next_u64()) * span;
    return lo + static_cast<int64_t>(wide >> 64);
}

double Rng::uniform_real(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::normal() {
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

std::vector<int> Rng::sample_without_replacement(int n, int k) {
    if (k < 0 || k > n) throw ArgumentError("sample_without_replacement: k out of range");
    std::vector<int> out;
    out.reserve(static_cast<size_t>(k));
    while (static_cast<int>(out.size()) < k) {
        const int v = static_cast<int>(uniform_int(0, n - 1));
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dose

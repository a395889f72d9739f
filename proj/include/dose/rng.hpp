#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace dose {

// Counter-based splittable PRNG (splitmix64 core).
//
// child() derives a substream from the seed this Rng was *constructed* with,
// not from its current position, so the substream layout of a pipeline does
// not depend on how many draws happened in between or in what order the
// substreams are requested.
class Rng {
  public:
    explicit Rng(uint64_t seed) : seed_(seed), state_(seed) {}

    Rng child(std::string_view label) const { return child(label, 0); }
    Rng child(std::string_view label, uint64_t index) const;

    uint64_t seed() const { return seed_; }

    uint64_t next_u64();

    // [0, 1)
    double uniform();

    // inclusive on both ends
    int64_t uniform_int(int64_t lo, int64_t hi);

    double uniform_real(double lo, double hi);

    // Standard normal via Box-Muller.
    double normal();

    bool bernoulli(double p) { return uniform() < p; }

    // k distinct values from [0, n), sorted ascending.
    std::vector<int> sample_without_replacement(int n, int k);

    template <typename Container>
    const typename Container::value_type& pick(const Container& c) {
        return c[static_cast<size_t>(uniform_int(0, static_cast<int64_t>(c.size()) - 1))];
    }

  private:
    uint64_t seed_;
    uint64_t state_;
};

}  // namespace dose

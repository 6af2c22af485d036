#pragma once

#include <cstdint>
#include <random>

namespace aisim {

// splitmix64 finalizer; used to turn (seed, salt) pairs into well-mixed stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seeded generator with cheap derivation of independent child streams, so that
// parallel and serial runs draw identical numbers.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(mix64(seed)) {}

    // Child stream determined by (seed, salt) only, not by draws made so far.
    Rng derive(std::uint64_t salt) const { return Rng(mix64(seed_ ^ mix64(salt))); }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return std::uniform_int_distribution<int>(lo, hi)(gen_);
    }
    bool chance(double p) { return uniform(0.0, 1.0) < p; }

    std::uint64_t seed() const { return seed_; }
    std::mt19937_64& engine() { return gen_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace aisim

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tasep {

// splitmix64 step; used to decorrelate per-replica seeds derived from one
// master seed so replica r is reproducible independently of batch layout.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t h = splitmix64(master ^ 0x6a09e667f3bcc909ULL);
    h = splitmix64(h + 0x9e3779b97f4a7c15ULL * (stream + 1));
    return splitmix64(h ^ (stream << 1));
}

// mt19937_64 with hand-rolled variate transforms.  std::uniform_real_distribution
// and friends are not bit-identical across standard library implementations;
// these transforms are, which keeps seeded runs byte-reproducible.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    // Uniform on (0,1): 53-bit mantissa, offset by half an ulp so 0 is excluded.
    double uniform01() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential(double rate) {
        return -std::log(uniform01()) / rate;
    }

    bool bernoulli(double p) {
        return uniform01() < p;
    }

    // Uniform integer in [0, n), n >= 1.  Rejection-free modulo is fine here:
    // n is always tiny relative to 2^64 so the bias is far below 2^-40.
    std::uint64_t below(std::uint64_t n) {
        return gen_() % n;
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace tasep

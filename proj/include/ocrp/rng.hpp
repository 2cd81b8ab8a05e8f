#ifndef OCRP_RNG_HPP
#define OCRP_RNG_HPP

#include <cstdint>

namespace ocrp {

// Deterministic xoshiro256++ stream, seeded from (master seed, replica index)
// through splitmix64. Standard-library distributions are implementation
// defined, so all uniforms are derived here explicitly: identical inputs give
// bit-identical streams on any platform and any thread count.
class RngStream {
  public:
    explicit RngStream(std::uint64_t master_seed, std::uint64_t replica = 0) {
        std::uint64_t x = master_seed;
        std::uint64_t a = splitmix64(x);
        std::uint64_t b = splitmix64(x);
        x = a ^ (replica * 0xD1B54A32D192ED03ULL + b);
        for (auto& w : s_) w = splitmix64(x);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9E3779B97F4A7C15ULL;
    }

    std::uint64_t next() {
        std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // [0, 1), 53 significant bits.
    double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

    // [0, hi).
    double uniform(double hi) { return uniform01() * hi; }

  private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t s_[4];
};

}  // namespace ocrp

#endif

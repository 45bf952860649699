#pragma once

#include <cstdint>
#include <limits>

namespace swiptsim {

// xoshiro256++ (Blackman & Vigna, public domain reference implementation).
// Chosen over std::mt19937_64 because simulations need cheap, independently
// seeded streams: every (seed, stream, substream) triple is expanded through
// splitmix64 into a full 256-bit state, so stream k of a run never depends on
// how many draws stream k-1 consumed.  That is what makes per-trial results
// independent of thread scheduling.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    Xoshiro256() : Xoshiro256(0xdeadbeefcafef00dULL) {}

    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (auto& w : state_) w = splitmix64(z);
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0)
            state_[0] = 0x9e3779b97f4a7c15ULL;
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

// Collapses (seed, stream) into a single 64-bit value suitable for seeding a
// further generator or deriving nested streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed;
    std::uint64_t a = Xoshiro256::splitmix64(x);
    x = a ^ (stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    return Xoshiro256::splitmix64(x);
}

inline Xoshiro256 make_stream(std::uint64_t seed, std::uint64_t stream) {
    return Xoshiro256(derive_seed(seed, stream));
}

inline Xoshiro256 make_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
    return Xoshiro256(derive_seed(derive_seed(seed, stream), substream));
}

}  // namespace swiptsim

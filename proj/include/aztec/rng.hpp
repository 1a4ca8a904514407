#pragma once

#include <cstdint>

namespace aztec {

// SplitMix64 finalizer.  All randomness in the project flows through this
// mixer, used either counter-based (coin flips of the shuffling sampler,
// one value per (stage, cell)) or as a sequential stream (random walks).
inline uint64_t splitmix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based generator: value(stream, counter) is a pure function, so
// parallel loops drawing by counter are reproducible for any thread count.
// Per-sample streams are derived as stream = seed ^ sample_index.
inline uint64_t counter_rng(uint64_t stream, uint64_t counter) {
    return splitmix64(splitmix64(stream) ^ splitmix64(counter * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL));
}

inline double u64_to_unit(uint64_t v) {
    return double(v >> 11) * 0x1.0p-53;  // [0,1)
}

inline double counter_uniform(uint64_t stream, uint64_t counter) {
    return u64_to_unit(counter_rng(stream, counter));
}

// Sequential stream for walk-type algorithms.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}
    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return u64_to_unit(next()); }

  private:
    uint64_t state_;
};

}  // namespace aztec

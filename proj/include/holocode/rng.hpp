#pragma once

#include <cstdint>

namespace holocode {

// Counter-based generator: a splitmix64 mixer over (key, counter). Streams
// are keyed by hashing (seed, stream, substream), so workers can create the
// generator for any trial independently, with no shared state and identical
// results regardless of scheduling.
class CounterRng {
  public:
    CounterRng(uint64_t seed, uint64_t stream, uint64_t substream) {
        key_ = mix(seed ^ 0x243f6a8885a308d3ull);
        key_ = mix(key_ ^ stream);
        key_ = mix(key_ ^ 0x13198a2e03707344ull);
        key_ = mix(key_ ^ substream);
    }

    uint64_t next() {
        counter_ += 0x9e3779b97f4a7c15ull;
        return mix(key_ ^ counter_);
    }

    // uniform double in [0, 1)
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, bound), bound >= 1, by rejection
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    static uint64_t mix(uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

  private:
    uint64_t key_ = 0;
    uint64_t counter_ = 0;
};

}  // namespace holocode

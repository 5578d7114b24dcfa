#pragma once

#include <cstdint>
#include <string_view>

namespace bing {

// splitmix64 finalizer; the standard fixed-increment generator.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t splitmix_once(std::uint64_t seed) { return splitmix64(seed); }

// Splittable hash of (seed, sigma, stream): the same node id yields the same
// value regardless of expansion order or thread schedule. sigma is folded in
// sentinel-prefixed 62-bit blocks, so every prefix hashes differently and the
// state can be carried incrementally along a branch.
struct SigmaHash {
    std::uint64_t h;
    std::uint64_t block = 1;

    explicit SigmaHash(std::uint64_t seed, std::uint64_t stream = 0)
        : h(splitmix_once(seed ^ stream * 0xA24BAED4963EE407ull)) {}

    void push(int bit) {
        block = (block << 1) | std::uint64_t(bit & 1);
        if (block >> 62) {
            h = splitmix_once(h ^ block);
            block = 1;
        }
    }

    std::uint64_t value() const { return splitmix_once(h ^ block); }
};

inline std::uint64_t hash_seed_sigma(std::uint64_t seed, std::string_view sigma,
                                     std::uint64_t stream = 0) {
    SigmaHash hash(seed, stream);
    for (char ch : sigma) hash.push(ch == '1');
    return hash.value();
}

// Deterministic stream of draws derived from (seed, sigma, stream).
struct SigmaRng {
    std::uint64_t state;
    SigmaRng(std::uint64_t seed, std::string_view sigma, std::uint64_t stream = 0)
        : state(hash_seed_sigma(seed, sigma, stream)) {}
    std::uint64_t next() { return splitmix64(state); }
};

} // namespace bing

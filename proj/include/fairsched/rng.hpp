#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace fairsched {

// splitmix64: fixed 64-bit generator, bit-identical across platforms.
// std::mt19937 + std::shuffle are avoided on purpose: libstdc++ and libc++
// disagree on distribution internals, and runs must replay exactly.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). Multiply-shift; bias is < 2^-32 for the tiny
    // bounds used here and the mapping is deterministic.
    uint64_t next_below(uint64_t bound) {
        return static_cast<uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    double next_double() {  // [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    uint64_t state_;
};

// Fisher-Yates driven by SplitMix64.
inline void shuffle(std::vector<int>& v, SplitMix64& rng) {
    for (size_t k = v.size(); k > 1; --k) {
        size_t j = static_cast<size_t>(rng.next_below(k));
        std::swap(v[k - 1], v[j]);
    }
}

// Randomized round-robin offer stream: one random permutation of servers per
// round, each server offered once per round.
class RoundRobinOffers {
public:
    RoundRobinOffers(int num_servers, SplitMix64 rng)
        : rng_(rng), perm_(num_servers) {
        std::iota(perm_.begin(), perm_.end(), 0);
        shuffle(perm_, rng_);
    }

    int next_offer() {
        if (pos_ == perm_.size()) {
            shuffle(perm_, rng_);
            pos_ = 0;
        }
        return perm_[pos_++];
    }

private:
    SplitMix64 rng_;
    std::vector<int> perm_;
    size_t pos_ = 0;
};

}  // namespace fairsched

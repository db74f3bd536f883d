#pragma once

#include <cmath>
#include <cstdint>

namespace sinodiff {

/// Counter-based generator state. Identical (seed, stream, counter) produce
/// the identical output sequence regardless of call history elsewhere, so
/// parallel workers can split streams without coordination.
struct RngState {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::uint64_t counter = 0;
};

/// Philox4x32-10 counter-based generator.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0,
                 std::uint64_t counter = 0)
        : state_{seed, stream, counter} {}
    explicit Rng(const RngState& s) : state_(s) {}

    const RngState& state() const noexcept { return state_; }

    /// Derive an independent stream; the child shares the seed but never
    /// overlaps this generator's outputs.
    Rng split(std::uint64_t substream) const {
        return Rng(state_.seed, mix64(state_.stream ^ mix64(substream + 0x9e3779b97f4a7c15ull)));
    }

    std::uint32_t next_u32() {
        if (buffer_pos_ == 4) refill();
        return buffer_[buffer_pos_++];
    }

    std::uint64_t next_u64() {
        std::uint64_t lo = next_u32();
        std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    /// Uniform double in [0, 1).
    double uniform() { return next_u32() * 0x1p-32; }

    /// Uniform double in (0, 1]; safe as a log() argument.
    double uniform_pos() { return (static_cast<double>(next_u32()) + 1.0) * 0x1p-32; }

    /// Standard normal via Box-Muller; pairs are cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform_pos();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // modulo is fine here: n is tiny relative to 2^64
        return next_u64() % n;
    }

private:
    static std::uint64_t mix64(std::uint64_t x) {
        // splitmix64 finalizer
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    void refill() {
        std::uint32_t c0 = static_cast<std::uint32_t>(state_.counter);
        std::uint32_t c1 = static_cast<std::uint32_t>(state_.counter >> 32);
        std::uint32_t c2 = static_cast<std::uint32_t>(state_.stream);
        std::uint32_t c3 = static_cast<std::uint32_t>(state_.stream >> 32);
        std::uint32_t k0 = static_cast<std::uint32_t>(state_.seed);
        std::uint32_t k1 = static_cast<std::uint32_t>(state_.seed >> 32);
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = 0xD2511F53ull * c0;
            std::uint64_t p1 = 0xCD9E8D57ull * c2;
            std::uint32_t h0 = static_cast<std::uint32_t>(p0 >> 32);
            std::uint32_t l0 = static_cast<std::uint32_t>(p0);
            std::uint32_t h1 = static_cast<std::uint32_t>(p1 >> 32);
            std::uint32_t l1 = static_cast<std::uint32_t>(p1);
            std::uint32_t n0 = h1 ^ c1 ^ k0;
            std::uint32_t n1 = l1;
            std::uint32_t n2 = h0 ^ c3 ^ k1;
            std::uint32_t n3 = l0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        buffer_[0] = c0; buffer_[1] = c1; buffer_[2] = c2; buffer_[3] = c3;
        buffer_pos_ = 0;
        ++state_.counter;
    }

    RngState state_;
    std::uint32_t buffer_[4] = {0, 0, 0, 0};
    int buffer_pos_ = 4;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace sinodiff

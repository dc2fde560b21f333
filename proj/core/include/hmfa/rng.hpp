#pragma once

#include <cstdint>
#include <random>

namespace hmfa {

/// 64-bit finalizer from SplitMix64. Used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of replication `index` under `master`. Independent of scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Seedable, splittable generator. All randomness in the library goes through
/// this type, so results depend only on the seeds handed in.
///
/// Draws are built from raw 64-bit engine output rather than the standard
/// distributions, whose algorithms are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; safe as a log argument.
    double uniform_pos() { return 1.0 - uniform(); }

    /// Exponential with the given rate (> 0).
    double exponential(double rate);

    /// Unbiased integer in [0, bound). bound must be > 0.
    std::uint64_t index(std::uint64_t bound);

    bool bernoulli(double p) { return uniform() < p; }

    /// Child generator for sub-stream `stream`; does not advance this one.
    Rng split(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace hmfa

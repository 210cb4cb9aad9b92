#ifndef HNWSN_RNG_HPP
#define HNWSN_RNG_HPP

// Deterministic random streams.
//
// Every stream is a SplitMix64 sequence: the 64-bit state advances by the
// golden-ratio increment 0x9E3779B97F4A7C15 and each output is the state
// passed through the Stafford "variant 13" finalizer:
//
//     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//     z =  z ^ (z >> 31)
//
// Uniform doubles take the top 53 bits: (u >> 11) * 2^-53, so they lie in
// [0, 1). Normal variates use the Marsaglia polar method; both values of an
// accepted pair are used, the second one cached until the next call.
//
// Per-trial streams are derived from (master, index) with
//
//     derive(master, i) = mix(master + mix(i * 0x9E3779B97F4A7C15 + 0xD1B54A32D192ED03))
//
// mix is a bijection on 64-bit words and the multiplier is odd, so for a fixed
// master the derived seeds of distinct indices never collide.

#include <cmath>
#include <cstdint>

namespace hnwsn {

struct RandomSeed
{
    std::uint64_t master = 0;

    friend bool operator==(RandomSeed, RandomSeed) = default;
};

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t trial_index) noexcept
{
    return mix64(master + mix64(trial_index * kGoldenGamma + 0xD1B54A32D192ED03ULL));
}

/// SplitMix64 stream with uniform and standard-normal helpers.
class Rng
{
public:
    using result_type = std::uint64_t;

    constexpr explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}
    constexpr explicit Rng(RandomSeed seed) noexcept : state_(seed.master) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    constexpr result_type operator()() noexcept
    {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

    /// Uniform on [0, 1).
    constexpr double uniform() noexcept
    {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Standard normal, Marsaglia polar method.
    double normal() noexcept
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double factor = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * factor;
        has_spare_ = true;
        return u * factor;
    }

    constexpr std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace hnwsn

#endif  // HNWSN_RNG_HPP

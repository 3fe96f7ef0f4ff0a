#ifndef MFLIFT_RNG_HPP
#define MFLIFT_RNG_HPP

#include <cstdint>
#include <random>

namespace mflift {

/// Seeded generator with hand-rolled distribution transforms so that streams
/// are reproducible bit-for-bit for a given seed (std::*_distribution output
/// is implementation-defined; the mt19937_64 engine itself is not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1].
    double uniform_pos() {
        return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (pairs cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Exponential with unit mean.
    double exponential() { return -std::log(uniform_pos()); }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Decorrelated child seed for stream `index` of a master seed (splitmix64
/// finalizer over the pair), so changing the stream count never aliases
/// streams.
inline std::uint64_t subseed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace mflift

#endif

#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include "qmur/linalg.hpp"

namespace qmur {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based 64-bit generator: draw k of the stream keyed by `key` is
/// mix64(key + k * golden). Streams for different trials are independent
/// and can be generated in any order or in parallel.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t key) : key_(key) {}

    /// Substream for one trial of a seeded ensemble.
    static CounterRng substream(std::uint64_t seed, std::uint64_t trial)
    {
        return CounterRng(mix64(seed ^ mix64(trial ^ 0x5851f42d4c957f2dULL)));
    }

    /// Independent child stream, e.g. one per sampled object in a trial.
    CounterRng fork() { return CounterRng(mix64((*this)())); }

    result_type operator()() { return mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(*this); }
    double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(*this); }

    /// Entries with independent standard normal real and imaginary parts.
    Matrix complex_gaussian(Eigen::Index rows, Eigen::Index cols)
    {
        Matrix g(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i) {
                const double re = gaussian();
                const double im = gaussian();
                g(i, j) = Complex(re, im);
            }
        return g;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace qmur

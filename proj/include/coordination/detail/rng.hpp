// Portable seeded randomness.
//
// All sampling is done by hand on top of SplitMix64 so that a given seed
// produces the same stream on every standard library. Substreams are keyed
// by hashing (parent seed, tag, indices...).
#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace coordination::detail {

inline constexpr std::uint64_t splitmix_finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives a child seed from a parent seed and a list of keys.
inline constexpr std::uint64_t derive_seed(std::uint64_t parent,
                                           std::initializer_list<std::uint64_t> keys) {
    std::uint64_t h = splitmix_finalize(parent + 0x9e3779b97f4a7c15ULL);
    for (std::uint64_t k : keys) h = splitmix_finalize(h ^ (k + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
    return h;
}

class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return splitmix_finalize(state_);
    }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on [0, n), unbiased.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = max() - max() % n;
        std::uint64_t v;
        do {
            v = (*this)();
        } while (v >= limit);
        return v % n;
    }

    /// Index drawn from a probability vector by inverse CDF.
    std::size_t categorical(std::span<const double> probs) {
        const double r = uniform();
        double acc = 0.0;
        std::size_t last = 0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            if (probs[i] <= 0.0) continue;
            acc += probs[i];
            last = i;
            if (r < acc) return i;
        }
        return last;
    }

    /// Flat Dirichlet sample of the given length.
    std::vector<double> dirichlet_row(std::size_t n) {
        std::vector<double> row(n);
        double sum = 0.0;
        for (double& v : row) {
            v = -std::log(1.0 - uniform());
            sum += v;
        }
        for (double& v : row) v /= sum;
        return row;
    }

private:
    std::uint64_t state_;
};

}  // namespace coordination::detail

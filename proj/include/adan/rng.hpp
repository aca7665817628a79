#pragma once

#include <cstdint>
#include <random>

#include "adan/dense_vector.hpp"

namespace adan {

/// Deterministic random stream. Same seed + same call sequence gives a
/// bit-identical output sequence; the normal transform is implemented
/// here (Box-Muller over raw mt19937_64 words) rather than through
/// std::normal_distribution, whose output is implementation-defined.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t position() const { return position_; }

    std::uint64_t next_u64() {
        ++position_;
        return gen_();
    }

    /// Uniform in [0, 1), 53 mantissa bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; consumes exactly two raw words.
    double normal() {
        double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Uniform index in [0, n). Modulo bias is below 1e-15 for any n
    /// used here and irrelevant next to the determinism contract.
    std::size_t uniform_index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

    DenseVector normal_vector(std::size_t d, double stddev = 1.0) {
        DenseVector r(d);
        for (std::size_t i = 0; i < d; ++i) r[i] = stddev * normal();
        return r;
    }

private:
    std::uint64_t seed_ = 0;
    std::mt19937_64 gen_;
    std::uint64_t position_ = 0;
};

}  // namespace adan

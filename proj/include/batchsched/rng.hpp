#ifndef BATCHSCHED_RNG_HPP
#define BATCHSCHED_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace batchsched {

// All randomized components draw from a Mersenne Twister through the fixed
// range mapping below, so runs with equal seeds produce identical results on
// every platform (std::uniform_int_distribution is not portable across
// standard library implementations).
using Rng = std::mt19937;

// Uniform integer in [lo, hi] via 32x32 -> 64 bit fixed point scaling.
// Slightly biased for spans that do not divide 2^32; the bias is below
// 2^-32 per value and irrelevant here, while the output is reproducible.
inline int uniform_int(Rng& rng, int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    const std::uint64_t word = static_cast<std::uint64_t>(rng());
    return lo + static_cast<int>((word * span) >> 32);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
    const double u = static_cast<double>(rng()) * 0x1p-32;
    return lo + u * (hi - lo);
}

// Derives an independent substream from a base seed and a tag path, e.g.
// {phase, run, iteration, rule}. Streams with different tags are unrelated,
// which keeps parallel and sequential execution orders equivalent.
inline Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint32_t> tags) {
    std::vector<std::uint32_t> material;
    material.reserve(2 + tags.size());
    material.push_back(static_cast<std::uint32_t>(seed));
    material.push_back(static_cast<std::uint32_t>(seed >> 32));
    for (std::uint32_t t : tags) material.push_back(t);
    std::seed_seq seq(material.begin(), material.end());
    return Rng(seq);
}

// Fisher-Yates shuffle using the portable mapping above.
template <class T>
void shuffle_portable(std::vector<T>& items, Rng& rng) {
    for (int i = static_cast<int>(items.size()) - 1; i > 0; --i) {
        const int j = uniform_int(rng, 0, i);
        std::swap(items[static_cast<std::size_t>(i)], items[static_cast<std::size_t>(j)]);
    }
}

}  // namespace batchsched

#endif

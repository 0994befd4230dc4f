#ifndef CSR_RNG_HPP
#define CSR_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace csr {

// Seeded generator with fixed draw algorithms. std::mt19937_64 output is
// specified by the standard; the bounded-int and unit-real draws below are
// pinned here because the std distributions are implementation-defined and
// would break cross-platform fixture stability.
class SeededRng {
public:
    explicit SeededRng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // Uniform in [0, n) by rejection on the top of the 64-bit range.
    uint64_t next_below(uint64_t n) {
        if (n == 0) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double unit_real() { return (gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit_real(); }

    // First `count` entries of a Fisher-Yates partial shuffle of [0, range):
    // `count` distinct indices, uniform over subsets, order-deterministic.
    std::vector<size_t> sample_distinct(size_t count, size_t range) {
        std::vector<size_t> idx(range);
        for (size_t i = 0; i < range; ++i) idx[i] = i;
        for (size_t j = 0; j < count && j < range; ++j) {
            size_t swap_with = j + static_cast<size_t>(next_below(range - j));
            std::swap(idx[j], idx[swap_with]);
        }
        idx.resize(count < range ? count : range);
        return idx;
    }

private:
    std::mt19937_64 gen_;
};

} // namespace csr

#endif

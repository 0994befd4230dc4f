#ifndef CSR_NOISE_HPP
#define CSR_NOISE_HPP

#include <cstdint>
#include <utility>

#include "csr/types.hpp"

namespace csr {

struct NoiseSpec {
    double density = 0.0;       // fraction of pixels corrupted, in [0,1]
    uint64_t seed = 0;          // RNG seed
    double salt_fraction = 0.5; // fraction of corrupted pixels set to 255
};

// Corrupt exactly round(density * H * W) distinct pixels, chosen by a seeded
// Fisher-Yates partial shuffle of the pixel index range; each becomes 255
// with probability salt_fraction, else 0. The returned mask marks corrupted
// pixels as NOT available. Bit-reproducible for equal seeds.
std::pair<PixelGrid, Mask> add_salt_pepper(const PixelGrid& grid, const NoiseSpec& spec);

// Every pixel equal to 0 or 255 is discarded (marked unavailable) and its
// working value set to the neutral 128; all others are copied as available.
// A clean pixel that happens to be 0 or 255 is discarded too; prescale the
// clean range to [1,254] to make detection exact.
std::pair<PixelGrid, Mask> detect_salt_pepper(const PixelGrid& grid);

// Map [0,255] to [1,254] so clean pixels never collide with the impulse
// values.
PixelGrid prescale_clean_range(const PixelGrid& grid);

// Median of the window x window neighborhood around each pixel, borders by
// edge replication. Window must be 3 or 5.
PixelGrid median_filter(const PixelGrid& grid, int window,
                        ExecPolicy policy = ExecPolicy::Parallel);

} // namespace csr

#endif

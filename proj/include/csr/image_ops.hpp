#ifndef CSR_IMAGE_OPS_HPP
#define CSR_IMAGE_OPS_HPP

#include <vector>

#include "csr/types.hpp"

namespace csr {

// One N x N tile of an image together with its mask restriction and origin.
struct Tile {
    PixelGrid block;
    Mask mask;
    int row0 = 0;
    int col0 = 0;
};

struct PlacedBlock {
    PixelGrid block;
    int row0 = 0;
    int col0 = 0;
};

// Row-major sequence of non-overlapping N x N tiles covering the grid exactly
// once. Dimensions must already be multiples of N (pad first).
std::vector<Tile> tile_blocks(const PixelGrid& grid, const Mask& mask, int block_size);

// Reassemble blocks into a height x width grid. Every pixel must be written
// exactly once; overlaps and gaps are assembly errors.
PixelGrid untile_blocks(const std::vector<PlacedBlock>& blocks, int height, int width);

struct PaddedImage {
    PixelGrid grid;
    Mask mask;
    int orig_height = 0;
    int orig_width = 0;
};

// Edge-replication padding on the right/bottom up to the next multiple of N.
// Padded pixels are marked available: they are known copies, not unknowns.
PaddedImage pad_to_multiple(const PixelGrid& grid, const Mask& mask, int block_size);

PixelGrid crop(const PixelGrid& grid, int height, int width);

// Clamp to [0,255], then round half away from zero. Non-finite input signals
// a diverged reconstruction upstream.
PixelGrid clamp_quantize(const PixelGrid& grid);

std::vector<PixelGrid> split_channels(const ChannelSet& set);
ChannelSet merge_channels(std::vector<PixelGrid> grids);

} // namespace csr

#endif

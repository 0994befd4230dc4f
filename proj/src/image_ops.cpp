#include "csr/image_ops.hpp"

#include <cmath>
#include <string>

namespace csr {

std::vector<Tile> tile_blocks(const PixelGrid& grid, const Mask& mask, int block_size) {
    if (block_size < 2)
        throw parameter_error("tile_blocks: block size below 2");
    if (grid.height != mask.height || grid.width != mask.width)
        throw dimension_error("tile_blocks: grid and mask dimensions differ");
    if (grid.height % block_size != 0 || grid.width % block_size != 0)
        throw dimension_error("tile_blocks: " + std::to_string(grid.height) + "x" +
                              std::to_string(grid.width) + " is not a multiple of " +
                              std::to_string(block_size) + "; pad the image first");

    std::vector<Tile> tiles;
    tiles.reserve(static_cast<size_t>(grid.height / block_size) * (grid.width / block_size));
    for (int r0 = 0; r0 < grid.height; r0 += block_size)
        for (int c0 = 0; c0 < grid.width; c0 += block_size) {
            Tile t;
            t.block = PixelGrid(block_size, block_size);
            t.mask = Mask(block_size, block_size);
            t.row0 = r0;
            t.col0 = c0;
            for (int r = 0; r < block_size; ++r)
                for (int c = 0; c < block_size; ++c) {
                    t.block.at(r, c) = grid.at(r0 + r, c0 + c);
                    t.mask.set(r, c, mask.at(r0 + r, c0 + c));
                }
            tiles.push_back(std::move(t));
        }
    return tiles;
}

PixelGrid untile_blocks(const std::vector<PlacedBlock>& blocks, int height, int width) {
    PixelGrid out(height, width);
    std::vector<uint8_t> written(out.pixel_count(), 0);
    for (const auto& b : blocks) {
        if (b.row0 < 0 || b.col0 < 0 || b.row0 + b.block.height > height ||
            b.col0 + b.block.width > width)
            throw dimension_error("untile_blocks: block at (" + std::to_string(b.row0) + "," +
                                  std::to_string(b.col0) + ") exceeds target dimensions");
        for (int r = 0; r < b.block.height; ++r)
            for (int c = 0; c < b.block.width; ++c) {
                const size_t i = static_cast<size_t>(b.row0 + r) * width + (b.col0 + c);
                if (written[i])
                    throw dimension_error("untile_blocks: pixel (" + std::to_string(b.row0 + r) +
                                          "," + std::to_string(b.col0 + c) + ") written twice");
                written[i] = 1;
                out.values[i] = b.block.at(r, c);
            }
    }
    for (size_t i = 0; i < written.size(); ++i)
        if (!written[i])
            throw dimension_error("untile_blocks: pixel " + std::to_string(i) + " left unwritten");
    return out;
}

PaddedImage pad_to_multiple(const PixelGrid& grid, const Mask& mask, int block_size) {
    if (grid.height != mask.height || grid.width != mask.width)
        throw dimension_error("pad_to_multiple: grid and mask dimensions differ");
    const auto round_up = [block_size](int v) {
        return (v + block_size - 1) / block_size * block_size;
    };
    PaddedImage out;
    out.orig_height = grid.height;
    out.orig_width = grid.width;
    const int h = round_up(grid.height);
    const int w = round_up(grid.width);
    if (h == grid.height && w == grid.width) {
        out.grid = grid;
        out.mask = mask;
        return out;
    }
    out.grid = PixelGrid(h, w);
    out.mask = Mask(h, w, true);
    for (int r = 0; r < h; ++r) {
        const int sr = r < grid.height ? r : grid.height - 1;
        for (int c = 0; c < w; ++c) {
            const int sc = c < grid.width ? c : grid.width - 1;
            out.grid.at(r, c) = grid.at(sr, sc);
            // Only the original extent keeps its availability; replicated
            // border pixels are known copies.
            out.mask.set(r, c, r < grid.height && c < grid.width ? mask.at(sr, sc) : true);
        }
    }
    return out;
}

PixelGrid crop(const PixelGrid& grid, int height, int width) {
    if (height > grid.height || width > grid.width)
        throw dimension_error("crop: target exceeds source dimensions");
    PixelGrid out(height, width);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) out.at(r, c) = grid.at(r, c);
    return out;
}

PixelGrid clamp_quantize(const PixelGrid& grid) {
    PixelGrid out(grid.height, grid.width);
    for (size_t i = 0; i < grid.values.size(); ++i) {
        const double v = grid.values[i];
        if (!std::isfinite(v))
            throw numeric_error("clamp_quantize: non-finite pixel value (diverged?)");
        const double clamped = v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v);
        out.values[i] = std::round(clamped); // half away from zero
    }
    return out;
}

std::vector<PixelGrid> split_channels(const ChannelSet& set) {
    set.validate();
    return set.channels;
}

ChannelSet merge_channels(std::vector<PixelGrid> grids) {
    return ChannelSet(std::move(grids)); // constructor validates counts and dims
}

} // namespace csr

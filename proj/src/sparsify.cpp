#include "csr/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>

#include "csr/dct.hpp"
#include "csr/image_ops.hpp"

namespace csr {

namespace {

void check_keep_k(int keep_k, int block_size) {
    const int total = block_size * block_size;
    if (keep_k < 1 || keep_k > total)
        throw parameter_error("sparsify: keep_k " + std::to_string(keep_k) + " outside [1, " +
                              std::to_string(total) + "]");
}

PixelGrid sparsify_with(const Dct2& dct, const PixelGrid& block, int keep_k) {
    DctSpectrum spec = dct.forward(block);
    const int total = spec.size * spec.size;
    if (keep_k == total) return dct.inverse(spec);

    // Rank coefficients by magnitude, ties by row-major index so the kept set
    // is deterministic.
    std::vector<int> order(total);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&spec](int a, int b) {
        return std::fabs(spec.coeffs[a]) > std::fabs(spec.coeffs[b]);
    });
    std::vector<uint8_t> keep(total, 0);
    for (int i = 0; i < keep_k; ++i) keep[order[i]] = 1;
    for (int i = 0; i < total; ++i)
        if (!keep[i]) spec.coeffs[i] = 0.0;
    return dct.inverse(spec);
}

} // namespace

PixelGrid sparsify_block(const PixelGrid& block, const SparsitySpec& spec) {
    if (block.height != block.width || block.height < 2)
        throw dimension_error("sparsify_block: block must be square, size >= 2");
    check_keep_k(spec.keep_k, block.height);
    return sparsify_with(Dct2(block.height), block, spec.keep_k);
}

PixelGrid sparsify_image(const PixelGrid& grid, int block_size, const SparsitySpec& spec,
                         ExecPolicy policy) {
    check_keep_k(spec.keep_k, block_size);
    Mask dummy(grid.height, grid.width, true);
    const std::vector<Tile> tiles = tile_blocks(grid, dummy, block_size);
    const Dct2 dct(block_size);

    std::vector<PlacedBlock> out(tiles.size());
    const int n = static_cast<int>(tiles.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(static) if (policy == ExecPolicy::Parallel)
    for (int i = 0; i < n; ++i) {
        try {
            out[i].block = sparsify_with(dct, tiles[i].block, spec.keep_k);
            out[i].row0 = tiles[i].row0;
            out[i].col0 = tiles[i].col0;
        } catch (...) {
#pragma omp critical(csr_sparsify_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return untile_blocks(out, grid.height, grid.width);
}

} // namespace csr

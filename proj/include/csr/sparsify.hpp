#ifndef CSR_SPARSIFY_HPP
#define CSR_SPARSIFY_HPP

#include "csr/types.hpp"

namespace csr {

// Number of DCT coefficients retained per N x N block.
struct SparsitySpec {
    int keep_k = 8;
};

// Keep the keep_k largest-magnitude coefficients of the block's spectrum and
// zero the rest. Ties at the boundary break by row-major (p,q) index order.
PixelGrid sparsify_block(const PixelGrid& block, const SparsitySpec& spec);

// sparsify_block applied independently to every tile. Dimensions must be
// multiples of block_size.
PixelGrid sparsify_image(const PixelGrid& grid, int block_size, const SparsitySpec& spec,
                         ExecPolicy policy = ExecPolicy::Parallel);

} // namespace csr

#endif

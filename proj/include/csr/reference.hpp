#ifndef CSR_REFERENCE_HPP
#define CSR_REFERENCE_HPP

#include <utility>

#include "csr/dct.hpp"
#include "csr/recon.hpp"
#include "csr/types.hpp"

// Serial reference implementations, independent of the fast paths they check.
// Tests compare against these; the benchmark times them against the OpenMP
// kernels. Nothing here is used by the production pipeline.
namespace csr::reference {

// Literal O(N^4) double-sum evaluation of the orthonormal DCT-II definition.
DctSpectrum dct2_forward_direct(const PixelGrid& block);

// Basis function (p,q) evaluated at sample (n,m) from the definition formula.
double dct2_basis_value(int block_size, int p, int q, int n, int m);

// Gradient by the literal recipe: form y +/- delta*impulse per missing pixel
// and take two fresh full transforms, no linearity shortcut.
GradientField gradient_estimate_naive(const PixelGrid& y, const Mask& mask, double delta);

// The full solver loop driven by the naive gradient. Serial.
std::pair<PixelGrid, ReconReport> reconstruct_block_naive(const PixelGrid& block,
                                                          const Mask& mask,
                                                          const ReconConfig& config);

std::pair<PixelGrid, std::vector<ReconReport>> reconstruct_image_naive(const PixelGrid& grid,
                                                                       const Mask& mask,
                                                                       int block_size,
                                                                       const ReconConfig& config);

// Per-pixel gather-and-sort median, serial.
PixelGrid median_filter_bruteforce(const PixelGrid& grid, int window);

// Keep-K by full stable sort of all |coefficients|, ties by row-major index.
PixelGrid sparsify_block_fullsort(const PixelGrid& block, int keep_k);

} // namespace csr::reference

#endif

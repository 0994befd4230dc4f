#ifndef CSR_PNM_HPP
#define CSR_PNM_HPP

#include <string>

#include "csr/types.hpp"

namespace csr {

// Binary PGM (P5, grayscale) and PPM (P6, color), 8-bit, maxval 255.
// The reader accepts arbitrary PNM whitespace and '#' comments; the writer
// emits the canonical header: magic, "\n", width, " ", height, "\n", "255\n",
// then raw samples row-major (RGB interleaved for P6).
ChannelSet load_image(const std::string& path);
void store_image(const std::string& path, const ChannelSet& image);

// Masks serialize as PGM images of the same dimensions: 255 = available,
// 0 = missing.
Mask load_mask(const std::string& path);
void store_mask(const std::string& path, const Mask& mask);

} // namespace csr

#endif

#ifndef CSR_METRICS_HPP
#define CSR_METRICS_HPP

#include <string>

#include "csr/types.hpp"

namespace csr {

struct QualityScore {
    double mse = 0.0;
    double psnr = 0.0; // +inf when mse == 0
    bool finite = true;
};

// Mean over all pixels of (a-b)^2; for channel sets, mean over all channels'
// pixels.
double mse(const PixelGrid& a, const PixelGrid& b);
double mse(const ChannelSet& a, const ChannelSet& b);

// 10*log10(255^2 / mse), peak fixed at 255. Identical images give +inf.
double psnr(const PixelGrid& a, const PixelGrid& b);
double psnr(const ChannelSet& a, const ChannelSet& b);

QualityScore quality(const ChannelSet& a, const ChannelSet& b);

// "inf" for the identical-image case, plain decimal otherwise.
std::string format_psnr(double psnr_db);

} // namespace csr

#endif

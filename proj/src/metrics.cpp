#include "csr/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace csr {

namespace {

void accumulate(const PixelGrid& a, const PixelGrid& b, double& sum, size_t& count) {
    if (!a.same_shape(b)) throw dimension_error("mse: image dimensions differ");
    for (size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        sum += d * d;
    }
    count += a.values.size();
}

double psnr_from_mse(double m) {
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / m);
}

} // namespace

double mse(const PixelGrid& a, const PixelGrid& b) {
    double sum = 0.0;
    size_t count = 0;
    accumulate(a, b, sum, count);
    return sum / static_cast<double>(count);
}

double mse(const ChannelSet& a, const ChannelSet& b) {
    if (a.channels.size() != b.channels.size())
        throw dimension_error("mse: channel counts differ");
    double sum = 0.0;
    size_t count = 0;
    for (size_t i = 0; i < a.channels.size(); ++i) accumulate(a.channels[i], b.channels[i], sum, count);
    return sum / static_cast<double>(count);
}

double psnr(const PixelGrid& a, const PixelGrid& b) { return psnr_from_mse(mse(a, b)); }

double psnr(const ChannelSet& a, const ChannelSet& b) { return psnr_from_mse(mse(a, b)); }

QualityScore quality(const ChannelSet& a, const ChannelSet& b) {
    QualityScore q;
    q.mse = mse(a, b);
    q.psnr = psnr_from_mse(q.mse);
    q.finite = q.mse != 0.0;
    return q;
}

std::string format_psnr(double psnr_db) {
    if (std::isinf(psnr_db)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", psnr_db);
    return buf;
}

} // namespace csr

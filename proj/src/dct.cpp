#include "csr/dct.hpp"

#include <cmath>
#include <string>

namespace csr {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_block(const PixelGrid& block) {
    if (block.height != block.width)
        throw dimension_error("dct2: block is " + std::to_string(block.height) + "x" +
                              std::to_string(block.width) + ", expected square");
    if (block.height < 2)
        throw dimension_error("dct2: block size " + std::to_string(block.height) +
                              " is below the minimum of 2");
    for (double v : block.values)
        if (!std::isfinite(v)) throw numeric_error("dct2: non-finite block entry");
}

} // namespace

Dct2::Dct2(int block_size) : n_(block_size) {
    if (n_ < 2)
        throw dimension_error("Dct2: block size " + std::to_string(n_) +
                              " is below the minimum of 2");
    basis_.resize(static_cast<size_t>(n_) * n_);
    const double dc = std::sqrt(1.0 / n_);
    const double ac = std::sqrt(2.0 / n_);
    for (int p = 0; p < n_; ++p) {
        const double scale = p == 0 ? dc : ac;
        for (int n = 0; n < n_; ++n)
            basis_[static_cast<size_t>(p) * n_ + n] =
                scale * std::cos(kPi * (2 * n + 1) * p / (2.0 * n_));
    }
}

DctSpectrum Dct2::forward(const PixelGrid& block) const {
    check_block(block);
    if (block.height != n_)
        throw dimension_error("Dct2::forward: block size mismatch");

    // Y = B X B^T, via tmp = B X then Y = tmp B^T.
    std::vector<double> tmp(static_cast<size_t>(n_) * n_, 0.0);
    for (int p = 0; p < n_; ++p)
        for (int m = 0; m < n_; ++m) {
            double s = 0.0;
            for (int n = 0; n < n_; ++n) s += basis(p, n) * block.at(n, m);
            tmp[static_cast<size_t>(p) * n_ + m] = s;
        }
    DctSpectrum out(n_);
    for (int p = 0; p < n_; ++p)
        for (int q = 0; q < n_; ++q) {
            double s = 0.0;
            for (int m = 0; m < n_; ++m) s += tmp[static_cast<size_t>(p) * n_ + m] * basis(q, m);
            out.at(p, q) = s;
        }
    return out;
}

PixelGrid Dct2::inverse(const DctSpectrum& spectrum) const {
    if (spectrum.size != n_)
        throw dimension_error("Dct2::inverse: spectrum size mismatch");
    for (double v : spectrum.coeffs)
        if (!std::isfinite(v)) throw numeric_error("dct2: non-finite spectrum entry");

    // X = B^T Y B.
    std::vector<double> tmp(static_cast<size_t>(n_) * n_, 0.0);
    for (int n = 0; n < n_; ++n)
        for (int q = 0; q < n_; ++q) {
            double s = 0.0;
            for (int p = 0; p < n_; ++p) s += basis(p, n) * spectrum.at(p, q);
            tmp[static_cast<size_t>(n) * n_ + q] = s;
        }
    PixelGrid out(n_, n_);
    for (int n = 0; n < n_; ++n)
        for (int m = 0; m < n_; ++m) {
            double s = 0.0;
            for (int q = 0; q < n_; ++q) s += tmp[static_cast<size_t>(n) * n_ + q] * basis(q, m);
            out.at(n, m) = s;
        }
    return out;
}

DctSpectrum dct2_forward(const PixelGrid& block) {
    check_block(block);
    return Dct2(block.height).forward(block);
}

PixelGrid dct2_inverse(const DctSpectrum& spectrum) {
    if (spectrum.size < 2) throw dimension_error("dct2_inverse: spectrum size below 2");
    return Dct2(spectrum.size).inverse(spectrum);
}

double l1_norm(const DctSpectrum& spectrum) {
    double s = 0.0;
    for (double v : spectrum.coeffs) s += std::fabs(v);
    return s;
}

DctSpectrum ImpulseSpectrumTable::spectrum(int k, int l) const {
    DctSpectrum out(size());
    for (int p = 0; p < size(); ++p)
        for (int q = 0; q < size(); ++q) out.at(p, q) = entry(k, l, p, q);
    return out;
}

ImpulseSpectrumTable impulse_table(int block_size) { return ImpulseSpectrumTable(block_size); }

} // namespace csr

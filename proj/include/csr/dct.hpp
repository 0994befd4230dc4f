#ifndef CSR_DCT_HPP
#define CSR_DCT_HPP

#include <vector>

#include "csr/types.hpp"

namespace csr {

// N x N transform coefficients, indexed row p, column q.
struct DctSpectrum {
    int size = 0;
    std::vector<double> coeffs;

    DctSpectrum() = default;
    explicit DctSpectrum(int n, double fill = 0.0)
        : size(n), coeffs(static_cast<size_t>(n) * n, fill) {}

    double& at(int p, int q) { return coeffs[static_cast<size_t>(p) * size + q]; }
    double at(int p, int q) const { return coeffs[static_cast<size_t>(p) * size + q]; }
};

// Orthonormal 2-D DCT (type II) on square N x N blocks via precomputed basis
// matrices: forward Y = B X B^T, inverse X = B^T Y B.
class Dct2 {
public:
    explicit Dct2(int block_size);

    int size() const { return n_; }

    DctSpectrum forward(const PixelGrid& block) const;
    PixelGrid inverse(const DctSpectrum& spectrum) const;

    // Basis matrix entry: row p of the 1-D transform evaluated at sample n.
    double basis(int p, int n) const { return basis_[static_cast<size_t>(p) * n_ + n]; }

private:
    int n_;
    std::vector<double> basis_; // n_ x n_, row-major
};

DctSpectrum dct2_forward(const PixelGrid& block);
PixelGrid dct2_inverse(const DctSpectrum& spectrum);

// Sum of |Y(p,q)| over all coefficients; the solver's objective.
double l1_norm(const DctSpectrum& spectrum);

// Spectra of unit impulses. By separability the spectrum of an impulse at
// (k,l) factors into basis(p,k)*basis(q,l), so entries are derived from the
// basis matrix instead of storing N^2 full spectra (which would be O(N^4)).
// Immutable after construction and shareable across threads.
class ImpulseSpectrumTable {
public:
    explicit ImpulseSpectrumTable(int block_size) : dct_(block_size) {}

    int size() const { return dct_.size(); }

    // Coefficient (p,q) of the spectrum of a unit impulse at pixel (k,l).
    double entry(int k, int l, int p, int q) const {
        return dct_.basis(p, k) * dct_.basis(q, l);
    }

    // Materialize the full spectrum of the impulse at (k,l).
    DctSpectrum spectrum(int k, int l) const;

    const Dct2& dct() const { return dct_; }

private:
    Dct2 dct_;
};

ImpulseSpectrumTable impulse_table(int block_size);

} // namespace csr

#endif

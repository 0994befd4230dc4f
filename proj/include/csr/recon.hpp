#ifndef CSR_RECON_HPP
#define CSR_RECON_HPP

#include <utility>
#include <vector>

#include "csr/dct.hpp"
#include "csr/types.hpp"

namespace csr {

// Solver parameters. Perturbation delta and step mu shrink together through
// the fixed ratio mu = mu_over_delta * delta.
struct ReconConfig {
    double delta0 = 128.0;        // initial perturbation, pixel-intensity units
    double mu_over_delta = 0.125; // step/perturbation ratio (1/N for N=8)
    double reduction = 0.1;       // shrink factor for delta and mu
    double delta_min = 1e-3;      // termination threshold on delta
    int max_iters = 2000;         // iteration cap per block
    int patience = 1;             // non-improving iterations before shrinking

    static ReconConfig defaults_for_block(int block_size) {
        ReconConfig c;
        c.mu_over_delta = 1.0 / block_size;
        return c;
    }

    void validate() const;
};

enum class Termination { DeltaFloor, MaxIters, NoMissingPixels };

const char* termination_name(Termination t);

// Per-block convergence trace. objective[0] is the initial J, so
// objective.size() == iterations + 1. delta_used runs parallel to objective
// and holds the perturbation in effect when each J was recorded, which the
// report serialization needs per row.
struct ReconReport {
    int iterations = 0;
    int reductions = 0;
    double final_delta = 0.0;
    std::vector<double> objective;
    std::vector<double> delta_used;
    Termination reason = Termination::NoMissingPixels;
};

// Raised when the objective turns non-finite; carries the trace so far.
struct divergence_error : numeric_error {
    ReconReport report;
    divergence_error(const std::string& msg, ReconReport r)
        : numeric_error(msg), report(std::move(r)) {}
};

// Nonzero only at missing positions, identically 0 where the mask is
// available.
using GradientField = PixelGrid;

// y = x at available positions, init_value elsewhere.
PixelGrid init_measurement(const PixelGrid& block, const Mask& mask, double init_value);

// Central-difference estimate of d l1_norm(forward(y)) / d y(k,l) for every
// missing pixel, via the impulse table (one forward transform total, then
// O(N^2) per pixel by linearity).
GradientField gradient_estimate(const PixelGrid& y, const Mask& mask, double delta,
                                const ImpulseSpectrumTable& table,
                                ExecPolicy policy = ExecPolicy::Parallel);

// y'(k,l) = y(k,l) - mu * g(k,l) at missing positions; available values are
// never changed, whatever the gradient holds there.
PixelGrid gradient_step(const PixelGrid& y, const GradientField& gradient, double mu,
                        const Mask& mask);

// Descend the block-spectrum L1 norm from the given measurement block. The
// block's missing entries serve as the initial iterate (callers set them via
// init_measurement or detect_salt_pepper). Returns the best iterate seen.
std::pair<PixelGrid, ReconReport> reconstruct_block(const PixelGrid& block, const Mask& mask,
                                                    const ReconConfig& config,
                                                    ExecPolicy policy = ExecPolicy::Parallel);

// reconstruct_block over every tile independently, reports in row-major block
// order. Results are bit-identical for Serial and Parallel policies.
std::pair<PixelGrid, std::vector<ReconReport>> reconstruct_image(
    const PixelGrid& grid, const Mask& mask, int block_size, const ReconConfig& config,
    ExecPolicy policy = ExecPolicy::Parallel);

// Each channel reconstructed separately against the shared mask.
std::pair<ChannelSet, std::vector<std::vector<ReconReport>>> reconstruct_color(
    const ChannelSet& channels, const Mask& mask, int block_size, const ReconConfig& config,
    ExecPolicy policy = ExecPolicy::Parallel);

} // namespace csr

#endif

#include "csr/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "csr/image_ops.hpp"

namespace csr::reference {

namespace {

constexpr double kPi = 3.14159265358979323846;

double scale_1d(int block_size, int p) {
    return p == 0 ? std::sqrt(1.0 / block_size) : std::sqrt(2.0 / block_size);
}

} // namespace

double dct2_basis_value(int block_size, int p, int q, int n, int m) {
    return scale_1d(block_size, p) * std::cos(kPi * (2 * n + 1) * p / (2.0 * block_size)) *
           scale_1d(block_size, q) * std::cos(kPi * (2 * m + 1) * q / (2.0 * block_size));
}

DctSpectrum dct2_forward_direct(const PixelGrid& block) {
    if (block.height != block.width || block.height < 2)
        throw dimension_error("dct2_forward_direct: block must be square, size >= 2");
    const int n = block.height;
    DctSpectrum out(n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            double s = 0.0;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    s += block.at(r, c) * dct2_basis_value(n, p, q, r, c);
            out.at(p, q) = s;
        }
    return out;
}

GradientField gradient_estimate_naive(const PixelGrid& y, const Mask& mask, double delta) {
    if (y.height != mask.height || y.width != mask.width)
        throw dimension_error("gradient_estimate_naive: dimensions differ");
    if (!(delta > 0.0)) throw parameter_error("gradient_estimate_naive: delta must be > 0");

    const Dct2 dct(y.height);
    GradientField g(y.height, y.width, 0.0);
    for (int k = 0; k < y.height; ++k)
        for (int l = 0; l < y.width; ++l) {
            if (mask.at(k, l)) continue;
            PixelGrid plus = y;
            PixelGrid minus = y;
            plus.at(k, l) += delta;
            minus.at(k, l) -= delta;
            g.at(k, l) =
                (l1_norm(dct.forward(plus)) - l1_norm(dct.forward(minus))) / (2.0 * delta);
        }
    return g;
}

std::pair<PixelGrid, ReconReport> reconstruct_block_naive(const PixelGrid& block,
                                                          const Mask& mask,
                                                          const ReconConfig& config) {
    config.validate();
    const Dct2 dct(block.height);

    ReconReport report;
    double objective = l1_norm(dct.forward(block));
    report.objective.push_back(objective);
    report.delta_used.push_back(config.delta0);
    report.final_delta = config.delta0;

    if (mask.all_available()) {
        report.reason = Termination::NoMissingPixels;
        return {block, report};
    }
    if (!std::isfinite(objective))
        throw divergence_error("reconstruct_block_naive: initial objective non-finite", report);

    PixelGrid best = block;
    double best_objective = objective;
    PixelGrid current = block;
    double delta = config.delta0;
    int stall = 0;
    report.reason = Termination::MaxIters;

    while (report.iterations < config.max_iters) {
        const GradientField grad = gradient_estimate_naive(current, mask, delta);
        const double mu = config.mu_over_delta * delta;
        for (int r = 0; r < current.height; ++r)
            for (int c = 0; c < current.width; ++c)
                if (!mask.at(r, c)) current.at(r, c) -= mu * grad.at(r, c);

        objective = l1_norm(dct.forward(current));
        ++report.iterations;
        report.objective.push_back(objective);
        report.delta_used.push_back(delta);
        report.final_delta = delta;

        if (!std::isfinite(objective))
            throw divergence_error("reconstruct_block_naive: objective diverged", report);

        if (objective < best_objective * (1.0 - 1e-6)) {
            best_objective = objective;
            best = current;
            stall = 0;
        } else if (++stall >= config.patience) {
            current = best;
            delta *= config.reduction;
            ++report.reductions;
            stall = 0;
            report.final_delta = delta;
            if (delta < config.delta_min) {
                report.reason = Termination::DeltaFloor;
                break;
            }
        }
    }
    return {best, report};
}

std::pair<PixelGrid, std::vector<ReconReport>> reconstruct_image_naive(const PixelGrid& grid,
                                                                       const Mask& mask,
                                                                       int block_size,
                                                                       const ReconConfig& config) {
    const std::vector<Tile> tiles = tile_blocks(grid, mask, block_size);
    std::vector<PlacedBlock> solved;
    std::vector<ReconReport> reports;
    solved.reserve(tiles.size());
    reports.reserve(tiles.size());
    for (const Tile& t : tiles) {
        auto [rec, rep] = reconstruct_block_naive(t.block, t.mask, config);
        solved.push_back(PlacedBlock{std::move(rec), t.row0, t.col0});
        reports.push_back(std::move(rep));
    }
    return {untile_blocks(solved, grid.height, grid.width), std::move(reports)};
}

PixelGrid median_filter_bruteforce(const PixelGrid& grid, int window) {
    if (window != 3 && window != 5)
        throw parameter_error("median_filter_bruteforce: window must be 3 or 5");
    const int radius = window / 2;
    PixelGrid out(grid.height, grid.width);
    for (int r = 0; r < grid.height; ++r)
        for (int c = 0; c < grid.width; ++c) {
            std::vector<double> values;
            values.reserve(static_cast<size_t>(window) * window);
            for (int dr = -radius; dr <= radius; ++dr)
                for (int dc = -radius; dc <= radius; ++dc) {
                    const int rr = std::clamp(r + dr, 0, grid.height - 1);
                    const int cc = std::clamp(c + dc, 0, grid.width - 1);
                    values.push_back(grid.at(rr, cc));
                }
            std::sort(values.begin(), values.end());
            out.at(r, c) = values[values.size() / 2];
        }
    return out;
}

PixelGrid sparsify_block_fullsort(const PixelGrid& block, int keep_k) {
    DctSpectrum spec = dct2_forward(block);
    const int total = spec.size * spec.size;
    if (keep_k < 1 || keep_k > total)
        throw parameter_error("sparsify_block_fullsort: keep_k out of range");

    // Sort ascending by magnitude; among equal magnitudes the LARGER row-major
    // index sorts first so it is zeroed first, matching the keep rule that
    // prefers smaller indices.
    std::vector<int> order(total);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&spec](int a, int b) {
        const double ma = std::fabs(spec.coeffs[a]);
        const double mb = std::fabs(spec.coeffs[b]);
        if (ma != mb) return ma < mb;
        return a > b;
    });
    for (int i = 0; i < total - keep_k; ++i) spec.coeffs[order[i]] = 0.0;
    return dct2_inverse(spec);
}

} // namespace csr::reference

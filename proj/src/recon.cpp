#include "csr/recon.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <utility>

#include "csr/image_ops.hpp"

namespace csr {

namespace {

// Relative improvement below this threshold counts as a stalled iteration.
constexpr double kImprovementThreshold = 1e-6;

void check_shapes(const PixelGrid& block, const Mask& mask, const char* who) {
    if (block.height != mask.height || block.width != mask.width)
        throw dimension_error(std::string(who) + ": block and mask dimensions differ");
}

// Positions of missing pixels, row-major.
std::vector<std::pair<int, int>> missing_positions(const Mask& mask) {
    std::vector<std::pair<int, int>> miss;
    for (int r = 0; r < mask.height; ++r)
        for (int c = 0; c < mask.width; ++c)
            if (!mask.at(r, c)) miss.emplace_back(r, c);
    return miss;
}

// Central difference of the spectrum L1 norm for one pixel: perturbing pixel
// (k,l) by +/-delta shifts every coefficient by +/-delta*entry(k,l,p,q), by
// linearity of the transform.
double pixel_gradient(const DctSpectrum& spectrum, const ImpulseSpectrumTable& table, int k,
                      int l, double delta) {
    const int n = spectrum.size;
    double plus = 0.0, minus = 0.0;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            const double shift = delta * table.entry(k, l, p, q);
            const double y = spectrum.at(p, q);
            plus += std::fabs(y + shift);
            minus += std::fabs(y - shift);
        }
    return (plus - minus) / (2.0 * delta);
}

GradientField gradient_from_spectrum(const DctSpectrum& spectrum,
                                     const std::vector<std::pair<int, int>>& miss,
                                     const ImpulseSpectrumTable& table, double delta,
                                     ExecPolicy policy) {
    GradientField g(spectrum.size, spectrum.size, 0.0);
    const int n = static_cast<int>(miss.size());
#pragma omp parallel for schedule(static) if (policy == ExecPolicy::Parallel)
    for (int i = 0; i < n; ++i)
        g.at(miss[i].first, miss[i].second) =
            pixel_gradient(spectrum, table, miss[i].first, miss[i].second, delta);
    return g;
}

std::pair<PixelGrid, ReconReport> solve_block(const PixelGrid& block, const Mask& mask,
                                              const ReconConfig& config,
                                              const ImpulseSpectrumTable& table,
                                              ExecPolicy policy) {
    const Dct2& dct = table.dct();
    const std::vector<std::pair<int, int>> miss = missing_positions(mask);

    ReconReport report;
    double objective = l1_norm(dct.forward(block));
    report.objective.push_back(objective);
    report.delta_used.push_back(config.delta0);
    report.final_delta = config.delta0;

    if (miss.empty()) {
        report.reason = Termination::NoMissingPixels;
        return {block, report};
    }
    if (!std::isfinite(objective))
        throw divergence_error("reconstruct_block: initial objective is non-finite", report);

    PixelGrid best = block;
    double best_objective = objective;
    PixelGrid current = block;
    DctSpectrum spectrum = dct.forward(current);

    double delta = config.delta0;
    int stall = 0;
    report.reason = Termination::MaxIters;

    while (report.iterations < config.max_iters) {
        const GradientField grad = gradient_from_spectrum(spectrum, miss, table, delta, policy);
        const double mu = config.mu_over_delta * delta;
        bool iterate_finite = true;
        for (const auto& [k, l] : miss) {
            current.at(k, l) -= mu * grad.at(k, l);
            iterate_finite = iterate_finite && std::isfinite(current.at(k, l));
        }
        if (!iterate_finite) {
            ++report.iterations;
            report.objective.push_back(std::numeric_limits<double>::infinity());
            report.delta_used.push_back(delta);
            throw divergence_error("reconstruct_block: iterate diverged at iteration " +
                                       std::to_string(report.iterations),
                                   report);
        }

        spectrum = dct.forward(current);
        objective = l1_norm(spectrum);
        ++report.iterations;
        report.objective.push_back(objective);
        report.delta_used.push_back(delta);
        report.final_delta = delta;

        if (!std::isfinite(objective))
            throw divergence_error("reconstruct_block: objective diverged at iteration " +
                                       std::to_string(report.iterations),
                                   report);

        if (objective < best_objective * (1.0 - kImprovementThreshold)) {
            best_objective = objective;
            best = current;
            stall = 0;
        } else if (++stall >= config.patience) {
            // Step size stopped paying off; discard any worsened iterate and
            // shrink the perturbation/step pair.
            current = best;
            spectrum = dct.forward(current);
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

} // namespace

void ReconConfig::validate() const {
    if (!(delta0 > delta_min) || !(delta_min > 0.0))
        throw parameter_error("ReconConfig: requires delta0 > delta_min > 0");
    if (!(reduction > 0.0 && reduction < 1.0))
        throw parameter_error("ReconConfig: reduction must be in (0,1)");
    if (max_iters < 1) throw parameter_error("ReconConfig: max_iters must be >= 1");
    if (patience < 1) throw parameter_error("ReconConfig: patience must be >= 1");
    if (!(mu_over_delta > 0.0)) throw parameter_error("ReconConfig: mu_over_delta must be > 0");
}

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::DeltaFloor: return "delta_min";
        case Termination::MaxIters: return "max_iters";
        case Termination::NoMissingPixels: return "no_missing_pixels";
    }
    return "unknown";
}

PixelGrid init_measurement(const PixelGrid& block, const Mask& mask, double init_value) {
    check_shapes(block, mask, "init_measurement");
    PixelGrid y(block.height, block.width);
    for (int r = 0; r < block.height; ++r)
        for (int c = 0; c < block.width; ++c)
            y.at(r, c) = mask.at(r, c) ? block.at(r, c) : init_value;
    return y;
}

GradientField gradient_estimate(const PixelGrid& y, const Mask& mask, double delta,
                                const ImpulseSpectrumTable& table, ExecPolicy policy) {
    check_shapes(y, mask, "gradient_estimate");
    if (!(delta > 0.0)) throw parameter_error("gradient_estimate: delta must be > 0");
    if (y.height != table.size())
        throw dimension_error("gradient_estimate: block size does not match impulse table");
    const DctSpectrum spectrum = table.dct().forward(y);
    return gradient_from_spectrum(spectrum, missing_positions(mask), table, delta, policy);
}

PixelGrid gradient_step(const PixelGrid& y, const GradientField& gradient, double mu,
                        const Mask& mask) {
    check_shapes(y, mask, "gradient_step");
    if (!y.same_shape(gradient))
        throw dimension_error("gradient_step: gradient dimensions differ from y");
    if (!(mu > 0.0)) throw parameter_error("gradient_step: mu must be > 0");
    PixelGrid out = y;
    for (int r = 0; r < y.height; ++r)
        for (int c = 0; c < y.width; ++c)
            if (!mask.at(r, c)) out.at(r, c) -= mu * gradient.at(r, c);
    return out;
}

std::pair<PixelGrid, ReconReport> reconstruct_block(const PixelGrid& block, const Mask& mask,
                                                    const ReconConfig& config,
                                                    ExecPolicy policy) {
    check_shapes(block, mask, "reconstruct_block");
    if (block.height != block.width || block.height < 2)
        throw dimension_error("reconstruct_block: block must be square, size >= 2");
    config.validate();
    return solve_block(block, mask, config, ImpulseSpectrumTable(block.height), policy);
}

std::pair<PixelGrid, std::vector<ReconReport>> reconstruct_image(const PixelGrid& grid,
                                                                 const Mask& mask, int block_size,
                                                                 const ReconConfig& config,
                                                                 ExecPolicy policy) {
    config.validate();
    const std::vector<Tile> tiles = tile_blocks(grid, mask, block_size);
    const ImpulseSpectrumTable table(block_size);

    std::vector<PlacedBlock> solved(tiles.size());
    std::vector<ReconReport> reports(tiles.size());
    std::exception_ptr failure;
    const int n = static_cast<int>(tiles.size());
    // Blocks are independent; the inner gradient loop parallelizes instead
    // when there is a single (whole-image) block.
    const ExecPolicy outer = n > 1 ? policy : ExecPolicy::Serial;
    const ExecPolicy inner = n > 1 ? ExecPolicy::Serial : policy;
#pragma omp parallel for schedule(dynamic) if (outer == ExecPolicy::Parallel)
    for (int i = 0; i < n; ++i) {
        try {
            auto [rec, rep] = solve_block(tiles[i].block, tiles[i].mask, config, table, inner);
            solved[i] = PlacedBlock{std::move(rec), tiles[i].row0, tiles[i].col0};
            reports[i] = std::move(rep);
        } catch (const divergence_error& e) {
#pragma omp critical(csr_recon_failure)
            if (!failure)
                failure = std::make_exception_ptr(divergence_error(
                    "block at (" + std::to_string(tiles[i].row0) + "," +
                        std::to_string(tiles[i].col0) + "): " + e.what(),
                    e.report));
        } catch (...) {
#pragma omp critical(csr_recon_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return {untile_blocks(solved, grid.height, grid.width), std::move(reports)};
}

std::pair<ChannelSet, std::vector<std::vector<ReconReport>>> reconstruct_color(
    const ChannelSet& channels, const Mask& mask, int block_size, const ReconConfig& config,
    ExecPolicy policy) {
    channels.validate();
    std::vector<PixelGrid> out;
    std::vector<std::vector<ReconReport>> reports;
    out.reserve(channels.channels.size());
    reports.reserve(channels.channels.size());
    for (const PixelGrid& ch : channels.channels) {
        auto [rec, rep] = reconstruct_image(ch, mask, block_size, config, policy);
        out.push_back(std::move(rec));
        reports.push_back(std::move(rep));
    }
    return {ChannelSet(std::move(out)), std::move(reports)};
}

} // namespace csr

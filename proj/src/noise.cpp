#include "csr/noise.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "csr/rng.hpp"

namespace csr {

namespace {

void check_8bit(const PixelGrid& grid, const char* who) {
    for (double v : grid.values)
        if (!(v >= 0.0 && v <= 255.0) || v != std::floor(v))
            throw parameter_error(std::string(who) +
                                  ": grid values must be integral in [0,255]");
}

} // namespace

std::pair<PixelGrid, Mask> add_salt_pepper(const PixelGrid& grid, const NoiseSpec& spec) {
    check_8bit(grid, "add_salt_pepper");
    if (!(spec.density >= 0.0 && spec.density <= 1.0))
        throw parameter_error("add_salt_pepper: density outside [0,1]");
    if (!(spec.salt_fraction >= 0.0 && spec.salt_fraction <= 1.0))
        throw parameter_error("add_salt_pepper: salt_fraction outside [0,1]");

    PixelGrid noisy = grid;
    Mask mask(grid.height, grid.width, true);
    const size_t total = grid.pixel_count();
    const size_t corrupt = static_cast<size_t>(std::llround(spec.density * total));

    SeededRng rng(spec.seed);
    for (size_t i : rng.sample_distinct(corrupt, total)) {
        noisy.values[i] = rng.unit_real() < spec.salt_fraction ? 255.0 : 0.0;
        mask.available[i] = 0;
    }
    return {std::move(noisy), std::move(mask)};
}

std::pair<PixelGrid, Mask> detect_salt_pepper(const PixelGrid& grid) {
    check_8bit(grid, "detect_salt_pepper");
    PixelGrid working = grid;
    Mask mask(grid.height, grid.width, true);
    for (size_t i = 0; i < grid.values.size(); ++i) {
        const double v = grid.values[i];
        if (v == 0.0 || v == 255.0) {
            working.values[i] = 128.0; // discarded sample, neutral init
            mask.available[i] = 0;
        }
    }
    return {std::move(working), std::move(mask)};
}

PixelGrid prescale_clean_range(const PixelGrid& grid) {
    check_8bit(grid, "prescale_clean_range");
    PixelGrid out(grid.height, grid.width);
    for (size_t i = 0; i < grid.values.size(); ++i)
        out.values[i] = 1.0 + std::round(grid.values[i] * 253.0 / 255.0);
    return out;
}

PixelGrid median_filter(const PixelGrid& grid, int window, ExecPolicy policy) {
    if (window != 3 && window != 5)
        throw parameter_error("median_filter: window " + std::to_string(window) +
                              " unsupported, expected 3 or 5");
    if (grid.height < 1 || grid.width < 1)
        throw dimension_error("median_filter: empty grid");

    const int radius = window / 2;
    const int count = window * window;
    PixelGrid out(grid.height, grid.width);
#pragma omp parallel for schedule(static) if (policy == ExecPolicy::Parallel)
    for (int r = 0; r < grid.height; ++r) {
        std::vector<double> neighborhood(count);
        for (int c = 0; c < grid.width; ++c) {
            int i = 0;
            for (int dr = -radius; dr <= radius; ++dr)
                for (int dc = -radius; dc <= radius; ++dc) {
                    const int rr = std::clamp(r + dr, 0, grid.height - 1);
                    const int cc = std::clamp(c + dc, 0, grid.width - 1);
                    neighborhood[i++] = grid.at(rr, cc);
                }
            // window*window is odd, so the middle element is the median
            std::nth_element(neighborhood.begin(), neighborhood.begin() + count / 2,
                             neighborhood.end());
            out.at(r, c) = neighborhood[count / 2];
        }
    }
    return out;
}

} // namespace csr

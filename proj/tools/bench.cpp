// Times the naive reference implementations against the fast serial and
// OpenMP kernels on a synthetic workload, and checks that Serial and Parallel
// outputs are bit-identical.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csr/noise.hpp"
#include "csr/recon.hpp"
#include "csr/reference.hpp"
#include "csr/rng.hpp"
#include "csr/types.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = clock_type::now();
        fn();
        const auto t1 = clock_type::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

// Smooth synthetic image: a few low-frequency cosines, near-sparse in the
// block DCT domain, so the solver workload resembles real use.
csr::PixelGrid synthetic_image(int height, int width) {
    csr::PixelGrid g(height, width);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c)
            g.at(r, c) = 128.0 + 60.0 * std::cos(0.13 * r) * std::cos(0.21 * c) +
                         40.0 * std::sin(0.05 * (r + 2 * c));
    return g;
}

double max_abs_diff(const csr::PixelGrid& a, const csr::PixelGrid& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

void print_row(const char* name, double ms, double baseline_ms) {
    std::printf("  %-28s %10.2f ms   %6.2fx\n", name, ms, baseline_ms / ms);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benchmark: naive reference vs fast serial vs fast OpenMP"};
    int size = 64;
    int block = 8;
    double density = 0.5;
    int reps = 3;
    uint64_t seed = 1;
    app.add_option("--size", size, "image side length");
    app.add_option("--block", block, "block size N");
    app.add_option("--density", density, "fraction of missing pixels");
    app.add_option("--reps", reps, "repetitions per timing (best kept)");
    app.add_option("--seed", seed, "RNG seed for the missing-pixel set");
    CLI11_PARSE(app, argc, argv);

    const csr::PixelGrid image = synthetic_image(size, size);
    csr::Mask mask(size, size, true);
    csr::SeededRng rng(seed);
    const size_t n_missing =
        static_cast<size_t>(std::llround(density * image.pixel_count()));
    for (size_t i : rng.sample_distinct(n_missing, image.pixel_count())) mask.available[i] = 0;

    const csr::PixelGrid measurement = csr::init_measurement(image, mask, 0.0);
    const csr::ReconConfig config = csr::ReconConfig::defaults_for_block(block);

    std::printf("workload: %dx%d image, %dx%d blocks, %zu missing pixels (%.0f%%)\n\n", size,
                size, block, block, n_missing, 100.0 * density);

    csr::PixelGrid out_naive, out_serial, out_parallel;
    const double ms_naive = time_ms(
        [&] {
            out_naive =
                csr::reference::reconstruct_image_naive(measurement, mask, block, config).first;
        },
        reps);
    const double ms_serial = time_ms(
        [&] {
            out_serial = csr::reconstruct_image(measurement, mask, block, config,
                                                csr::ExecPolicy::Serial)
                             .first;
        },
        reps);
    const double ms_parallel = time_ms(
        [&] {
            out_parallel = csr::reconstruct_image(measurement, mask, block, config,
                                                  csr::ExecPolicy::Parallel)
                               .first;
        },
        reps);

    std::printf("reconstruction%45s\n", "speedup vs naive");
    print_row("naive reference (serial)", ms_naive, ms_naive);
    print_row("fast gradient (serial)", ms_serial, ms_naive);
    print_row("fast gradient (OpenMP)", ms_parallel, ms_naive);

    std::printf("\n  max |naive - fast serial|    %.3e  (rounding only)\n",
                max_abs_diff(out_naive, out_serial));
    std::printf("  max |serial - parallel|      %.3e  (must be 0)\n",
                max_abs_diff(out_serial, out_parallel));

    csr::PixelGrid med_brute, med_serial, med_parallel;
    const double ms_med_brute = time_ms(
        [&] { med_brute = csr::reference::median_filter_bruteforce(measurement, 5); }, reps);
    const double ms_med_serial = time_ms(
        [&] { med_serial = csr::median_filter(measurement, 5, csr::ExecPolicy::Serial); }, reps);
    const double ms_med_parallel = time_ms(
        [&] { med_parallel = csr::median_filter(measurement, 5, csr::ExecPolicy::Parallel); },
        reps);

    std::printf("\nmedian filter (5x5)%40s\n", "speedup vs naive");
    print_row("gather+sort (serial)", ms_med_brute, ms_med_brute);
    print_row("nth_element (serial)", ms_med_serial, ms_med_brute);
    print_row("nth_element (OpenMP)", ms_med_parallel, ms_med_brute);
    std::printf("\n  max |serial - parallel|      %.3e  (must be 0)\n",
                max_abs_diff(med_serial, med_parallel));

    const bool identical = max_abs_diff(out_serial, out_parallel) == 0.0 &&
                           max_abs_diff(med_serial, med_parallel) == 0.0;
    std::printf("\nscheduling equivalence: %s\n", identical ? "bit-identical" : "MISMATCH");
    return identical ? 0 : 1;
}

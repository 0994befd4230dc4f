// Command-line front end: sparsify -> corrupt -> reconstruct -> score, plus
// the median baseline. Images are binary PGM/PPM; all randomness flows
// through --seed.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "csr/image_ops.hpp"
#include "csr/metrics.hpp"
#include "csr/noise.hpp"
#include "csr/pnm.hpp"
#include "csr/recon.hpp"
#include "csr/rng.hpp"
#include "csr/sparsify.hpp"
#include "csr/types.hpp"

namespace {

// Exit codes, distinct per error class.
constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitParameter = 2;
constexpr int kExitFormat = 3;
constexpr int kExitDivergence = 4;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// "# key=value" manifest header on the metrics summary stream.
void print_manifest(const std::vector<std::pair<std::string, std::string>>& entries) {
    for (const auto& [k, v] : entries) std::cout << "# " << k << "=" << v << "\n";
}

void print_metrics_line(const csr::ChannelSet& result, const csr::ChannelSet& reference,
                        const std::string& reference_name) {
    const csr::QualityScore q = csr::quality(result, reference);
    char msebuf[64];
    std::snprintf(msebuf, sizeof msebuf, "%.6f", q.mse);
    std::cout << "mse=" << msebuf << ", psnr=" << csr::format_psnr(q.psnr)
              << ", reference=" << reference_name << "\n";
}

csr::ChannelSet map_channels(const csr::ChannelSet& in,
                             const std::function<csr::PixelGrid(const csr::PixelGrid&)>& f) {
    std::vector<csr::PixelGrid> out;
    out.reserve(in.channels.size());
    for (const auto& ch : in.channels) out.push_back(f(ch));
    return csr::ChannelSet(std::move(out));
}

void write_reports(const std::string& path,
                   const std::vector<std::vector<csr::ReconReport>>& reports,
                   const std::vector<std::pair<int, int>>& origins) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw csr::format_error(path + ": cannot open report file for writing");
    for (size_t ch = 0; ch < reports.size(); ++ch) {
        for (size_t b = 0; b < reports[ch].size(); ++b) {
            const csr::ReconReport& r = reports[ch][b];
            out << "# block " << origins[b].first << " " << origins[b].second
                << " channel=" << ch << " iterations=" << r.iterations
                << " reductions=" << r.reductions << " final_delta=" << fmt_double(r.final_delta)
                << " reason=" << csr::termination_name(r.reason) << "\n";
            for (size_t i = 0; i < r.objective.size(); ++i) {
                char line[96];
                std::snprintf(line, sizeof line, "%zu, %.17g, %.17g\n", i, r.objective[i],
                              r.delta_used[i]);
                out << line;
            }
        }
    }
}

struct SparsifyArgs {
    std::string input, output;
    int block = 8;
    int keep = 8;
    uint64_t seed = 0;
};

int cmd_sparsify(const SparsifyArgs& a) {
    const csr::ChannelSet original = csr::load_image(a.input);
    const csr::SparsitySpec spec{a.keep};

    const csr::ChannelSet result = map_channels(original, [&](const csr::PixelGrid& ch) {
        const csr::Mask all(ch.height, ch.width, true);
        const csr::PaddedImage padded = csr::pad_to_multiple(ch, all, a.block);
        const csr::PixelGrid sparse = csr::sparsify_image(padded.grid, a.block, spec);
        return csr::clamp_quantize(csr::crop(sparse, padded.orig_height, padded.orig_width));
    });
    csr::store_image(a.output, result);

    print_manifest({{"cmd", "sparsify"},
                    {"input", a.input},
                    {"output", a.output},
                    {"block", std::to_string(a.block)},
                    {"keep_k", std::to_string(a.keep)},
                    {"seed", std::to_string(a.seed)}});
    print_metrics_line(result, original, a.input);
    return kExitOk;
}

struct CorruptArgs {
    std::string input, out_image, out_mask, mode = "missing";
    double density = 0.5;
    double salt_fraction = 0.5;
    uint64_t seed = 0;
    bool prescale = false;
};

int cmd_corrupt(const CorruptArgs& a) {
    if (!(a.density >= 0.0 && a.density <= 1.0))
        throw csr::parameter_error("corrupt: density outside [0,1]");
    if (!(a.salt_fraction >= 0.0 && a.salt_fraction <= 1.0))
        throw csr::parameter_error("corrupt: salt-fraction outside [0,1]");

    csr::ChannelSet image = csr::load_image(a.input);
    if (a.prescale)
        image = map_channels(image,
                             [](const csr::PixelGrid& ch) { return csr::prescale_clean_range(ch); });

    print_manifest({{"cmd", "corrupt"},
                    {"input", a.input},
                    {"out_image", a.out_image},
                    {"out_mask", a.out_mask.empty() ? "none" : a.out_mask},
                    {"mode", a.mode},
                    {"density", fmt_double(a.density)},
                    {"salt_fraction", fmt_double(a.salt_fraction)},
                    {"prescale", a.prescale ? "1" : "0"},
                    {"seed", std::to_string(a.seed)}});

    if (a.mode == "missing") {
        if (a.out_mask.empty())
            throw csr::parameter_error("corrupt: missing mode requires --out-mask");
        const size_t total = static_cast<size_t>(image.height()) * image.width();
        const size_t n_missing = static_cast<size_t>(std::llround(a.density * total));
        csr::SeededRng rng(a.seed);
        csr::Mask mask(image.height(), image.width(), true);
        for (size_t i : rng.sample_distinct(n_missing, total)) mask.available[i] = 0;

        // Missing pixels render white in the display image.
        csr::ChannelSet display = image;
        for (auto& ch : display.channels)
            for (size_t i = 0; i < ch.values.size(); ++i)
                if (!mask.available[i]) ch.values[i] = 255.0;

        csr::store_image(a.out_image, display);
        csr::store_mask(a.out_mask, mask);
        std::cout << "missing=" << n_missing << " of " << total << "\n";
        return kExitOk;
    }

    // saltpepper: corrupt the same positions with the same impulse value in
    // every channel; detection happens downstream.
    const csr::NoiseSpec spec{a.density, a.seed, a.salt_fraction};
    auto [noisy0, mask] = csr::add_salt_pepper(image.channels[0], spec);
    csr::ChannelSet noisy = image;
    noisy.channels[0] = noisy0;
    for (size_t ch = 1; ch < noisy.channels.size(); ++ch)
        for (size_t i = 0; i < mask.available.size(); ++i)
            if (!mask.available[i]) noisy.channels[ch].values[i] = noisy0.values[i];

    csr::store_image(a.out_image, noisy);
    if (!a.out_mask.empty()) csr::store_mask(a.out_mask, mask);
    std::cout << "corrupted=" << (mask.available.size() - mask.available_count()) << " of "
              << mask.available.size() << "\n";
    return kExitOk;
}

struct ReconstructArgs {
    std::string input, output, mask_path, report_path, reference_path;
    bool detect_saltpepper = false;
    bool serial = false;
    int block = 8;
    double init_value = 0.0;
    double delta0 = 128.0;
    double mu_over_delta = 0.0; // 0 = derive 1/block
    double reduction = 0.1;
    double delta_min = 1e-3;
    int max_iters = 2000;
    int patience = 1;
    uint64_t seed = 0;
};

int cmd_reconstruct(const ReconstructArgs& a) {
    if (a.mask_path.empty() && !a.detect_saltpepper)
        throw csr::parameter_error(
            "reconstruct: supply --mask FILE or --detect-saltpepper to identify missing pixels");
    if (!a.mask_path.empty() && a.detect_saltpepper)
        throw csr::parameter_error("reconstruct: --mask and --detect-saltpepper are exclusive");

    csr::ReconConfig config = csr::ReconConfig::defaults_for_block(a.block);
    config.delta0 = a.delta0;
    if (a.mu_over_delta > 0.0) config.mu_over_delta = a.mu_over_delta;
    config.reduction = a.reduction;
    config.delta_min = a.delta_min;
    config.max_iters = a.max_iters;
    config.patience = a.patience;
    config.validate();
    const csr::ExecPolicy policy = a.serial ? csr::ExecPolicy::Serial : csr::ExecPolicy::Parallel;

    const csr::ChannelSet loaded = csr::load_image(a.input);

    // Build the measurement channels and the shared missing-pixel mask.
    csr::ChannelSet measurement = loaded;
    csr::Mask mask;
    if (!a.mask_path.empty()) {
        mask = csr::load_mask(a.mask_path);
        if (mask.height != loaded.height() || mask.width != loaded.width())
            throw csr::parameter_error("reconstruct: mask dimensions do not match the image");
        for (auto& ch : measurement.channels) ch = csr::init_measurement(ch, mask, a.init_value);
    } else {
        // A pixel is discarded when any channel carries an impulse value.
        mask = csr::Mask(loaded.height(), loaded.width(), true);
        for (const auto& ch : loaded.channels) {
            const csr::Mask chmask = csr::detect_salt_pepper(ch).second;
            for (size_t i = 0; i < mask.available.size(); ++i)
                if (!chmask.available[i]) mask.available[i] = 0;
        }
        for (auto& ch : measurement.channels)
            for (size_t i = 0; i < mask.available.size(); ++i)
                if (!mask.available[i]) ch.values[i] = 128.0;
    }

    print_manifest({{"cmd", "reconstruct"},
                    {"input", a.input},
                    {"output", a.output},
                    {"mask", a.mask_path.empty() ? "detect-saltpepper" : a.mask_path},
                    {"block", std::to_string(a.block)},
                    {"init", fmt_double(a.init_value)},
                    {"delta0", fmt_double(config.delta0)},
                    {"mu_over_delta", fmt_double(config.mu_over_delta)},
                    {"reduction", fmt_double(config.reduction)},
                    {"delta_min", fmt_double(config.delta_min)},
                    {"max_iters", std::to_string(config.max_iters)},
                    {"patience", std::to_string(config.patience)},
                    {"serial", a.serial ? "1" : "0"},
                    {"report", a.report_path.empty() ? "none" : a.report_path},
                    {"reference", a.reference_path.empty() ? "none" : a.reference_path},
                    {"seed", std::to_string(a.seed)}});

    // Pad, solve every channel against the shared mask, crop, quantize.
    csr::PaddedImage padded_first =
        csr::pad_to_multiple(measurement.channels[0], mask, a.block);
    std::vector<csr::PixelGrid> padded_channels{padded_first.grid};
    for (size_t ch = 1; ch < measurement.channels.size(); ++ch)
        padded_channels.push_back(
            csr::pad_to_multiple(measurement.channels[ch], mask, a.block).grid);

    auto [reconstructed, reports] = csr::reconstruct_color(
        csr::ChannelSet(std::move(padded_channels)), padded_first.mask, a.block, config, policy);

    const csr::ChannelSet result =
        map_channels(reconstructed, [&](const csr::PixelGrid& ch) {
            return csr::clamp_quantize(
                csr::crop(ch, padded_first.orig_height, padded_first.orig_width));
        });
    csr::store_image(a.output, result);

    if (!a.report_path.empty()) {
        std::vector<std::pair<int, int>> origins;
        for (int r0 = 0; r0 < padded_first.grid.height; r0 += a.block)
            for (int c0 = 0; c0 < padded_first.grid.width; c0 += a.block)
                origins.emplace_back(r0, c0);
        write_reports(a.report_path, reports, origins);
    }

    if (!a.reference_path.empty()) {
        print_metrics_line(result, csr::load_image(a.reference_path), a.reference_path);
    } else {
        std::cout << "# note=no reference supplied; metrics skipped\n";
    }
    return kExitOk;
}

struct MedianArgs {
    std::string input, output, reference_path;
    int window = 3;
    uint64_t seed = 0;
};

int cmd_median(const MedianArgs& a) {
    if (a.window != 3 && a.window != 5)
        throw csr::parameter_error("median: window must be 3 or 5");
    const csr::ChannelSet image = csr::load_image(a.input);
    const csr::ChannelSet result = map_channels(image, [&](const csr::PixelGrid& ch) {
        return csr::median_filter(ch, a.window);
    });
    csr::store_image(a.output, result);

    print_manifest({{"cmd", "median"},
                    {"input", a.input},
                    {"output", a.output},
                    {"window", std::to_string(a.window)},
                    {"reference", a.reference_path.empty() ? "none" : a.reference_path},
                    {"seed", std::to_string(a.seed)}});
    if (!a.reference_path.empty())
        print_metrics_line(result, csr::load_image(a.reference_path), a.reference_path);
    return kExitOk;
}

struct MetricsArgs {
    std::string image, reference;
    uint64_t seed = 0;
};

int cmd_metrics(const MetricsArgs& a) {
    const csr::ChannelSet img = csr::load_image(a.image);
    const csr::ChannelSet ref = csr::load_image(a.reference);
    print_manifest({{"cmd", "metrics"},
                    {"image", a.image},
                    {"reference", a.reference},
                    {"seed", std::to_string(a.seed)}});
    print_metrics_line(img, ref, a.reference);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block-DCT compressive-sensing image reconstruction"};
    app.require_subcommand(1);

    SparsifyArgs sp;
    CLI::App* sparsify = app.add_subcommand("sparsify", "Zero the smallest DCT coefficients");
    sparsify->add_option("input", sp.input, "input PGM/PPM")->required();
    sparsify->add_option("output", sp.output, "output image")->required();
    sparsify->add_option("--block", sp.block, "block size N");
    sparsify->add_option("--keep", sp.keep, "coefficients kept per block");
    sparsify->add_option("--seed", sp.seed, "RNG seed (recorded; unused here)");

    CorruptArgs co;
    CLI::App* corrupt = app.add_subcommand("corrupt", "Remove pixels or add salt-and-pepper noise");
    corrupt->add_option("input", co.input, "input PGM/PPM")->required();
    corrupt->add_option("out_image", co.out_image, "corrupted/display image")->required();
    corrupt->add_option("--out-mask", co.out_mask, "availability mask (PGM)");
    corrupt->add_option("--mode", co.mode, "missing | saltpepper")
        ->check(CLI::IsMember({"missing", "saltpepper"}));
    corrupt->add_option("--density", co.density, "fraction of pixels corrupted");
    corrupt->add_option("--salt-fraction", co.salt_fraction, "fraction of impulses set to 255");
    corrupt->add_flag("--prescale", co.prescale, "map clean range [0,255] to [1,254] first");
    corrupt->add_option("--seed", co.seed, "RNG seed");

    ReconstructArgs re;
    CLI::App* reconstruct = app.add_subcommand("reconstruct", "Recover missing pixels");
    reconstruct->add_option("input", re.input, "measurement image")->required();
    reconstruct->add_option("output", re.output, "reconstructed image")->required();
    reconstruct->add_option("--mask", re.mask_path, "availability mask (PGM)");
    reconstruct->add_flag("--detect-saltpepper", re.detect_saltpepper,
                          "derive the mask from 0/255 pixels");
    reconstruct->add_option("--block", re.block, "block size N");
    reconstruct->add_option("--init", re.init_value, "initial value for missing pixels");
    reconstruct->add_option("--delta0", re.delta0, "initial perturbation");
    reconstruct->add_option("--mu-ratio", re.mu_over_delta, "step/perturbation ratio (default 1/N)");
    reconstruct->add_option("--reduction", re.reduction, "step shrink factor");
    reconstruct->add_option("--delta-min", re.delta_min, "termination threshold on delta");
    reconstruct->add_option("--max-iters", re.max_iters, "iteration cap per block");
    reconstruct->add_option("--patience", re.patience, "stalled iterations before shrinking");
    reconstruct->add_option("--report", re.report_path, "per-block convergence report file");
    reconstruct->add_option("--reference", re.reference_path, "reference image for metrics");
    reconstruct->add_flag("--serial", re.serial, "disable parallel execution");
    reconstruct->add_option("--seed", re.seed, "RNG seed (recorded; solver is deterministic)");

    MedianArgs me;
    CLI::App* median = app.add_subcommand("median", "Median-filter baseline");
    median->add_option("input", me.input, "input PGM/PPM")->required();
    median->add_option("output", me.output, "filtered image")->required();
    median->add_option("--window", me.window, "3 or 5");
    median->add_option("--reference", me.reference_path, "reference image for metrics");
    median->add_option("--seed", me.seed, "RNG seed (recorded; unused here)");

    MetricsArgs mt;
    CLI::App* metrics = app.add_subcommand("metrics", "MSE/PSNR between two images");
    metrics->add_option("image", mt.image, "image under test")->required();
    metrics->add_option("reference", mt.reference, "reference image")->required();
    metrics->add_option("--seed", mt.seed, "RNG seed (recorded; unused here)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitParameter;
    }

    try {
        if (sparsify->parsed()) return cmd_sparsify(sp);
        if (corrupt->parsed()) return cmd_corrupt(co);
        if (reconstruct->parsed()) return cmd_reconstruct(re);
        if (median->parsed()) return cmd_median(me);
        if (metrics->parsed()) return cmd_metrics(mt);
    } catch (const csr::divergence_error& e) {
        std::cerr << "error (divergence): " << e.what() << "\n";
        return kExitDivergence;
    } catch (const csr::format_error& e) {
        std::cerr << "error (format): " << e.what() << "\n";
        return kExitFormat;
    } catch (const csr::parameter_error& e) {
        std::cerr << "error (parameter): " << e.what() << "\n";
        return kExitParameter;
    } catch (const csr::dimension_error& e) {
        std::cerr << "error (dimension): " << e.what() << "\n";
        return kExitParameter;
    } catch (const csr::numeric_error& e) {
        std::cerr << "error (numeric): " << e.what() << "\n";
        return kExitDivergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOther;
    }
    return kExitOther;
}

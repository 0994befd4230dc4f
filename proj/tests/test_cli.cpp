// Integration tests driving the real csrecon binary (path in CSRECON_BIN).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "csr/image_ops.hpp"
#include "csr/metrics.hpp"
#include "csr/noise.hpp"
#include "csr/pnm.hpp"
#include "csr/recon.hpp"
#include "csr/rng.hpp"
#include "csr/sparsify.hpp"

using namespace csr;

namespace {

const std::string kDir = "cli_scratch";

std::string bin() {
    const char* p = std::getenv("CSRECON_BIN");
    REQUIRE(p != nullptr);
    return p;
}

// Runs a csrecon invocation, returns its exit code; stdout+stderr land in
// cli_scratch/last_output.txt.
int run(const std::string& args) {
    const std::string cmd = bin() + " " + args + " >" + kDir + "/last_output.txt 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string last_output() {
    std::ifstream in(kDir + "/last_output.txt");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

PixelGrid synthetic(int h, int w, uint64_t seed) {
    SeededRng rng(seed);
    PixelGrid g(h, w);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            g.at(r, c) = 120.0 + 70.0 * std::cos(0.4 * r + rng.unit_real() * 0.05) *
                                     std::cos(0.3 * c) +
                         30.0 * std::sin(0.09 * (r + c));
    return clamp_quantize(g);
}

std::string path(const std::string& name) { return kDir + "/" + name; }

struct ScratchDir {
    ScratchDir() { std::filesystem::create_directories(kDir); }
};
const ScratchDir scratch_dir;

} // namespace

TEST_CASE("sparsify with keep_k = 64 is the identity up to quantization") {
    store_image(path("full.pgm"), ChannelSet({synthetic(32, 32, 1)}));
    REQUIRE(run("sparsify " + path("full.pgm") + " " + path("full_s.pgm") + " --keep 64") == 0);
    const ChannelSet in = load_image(path("full.pgm"));
    const ChannelSet out = load_image(path("full_s.pgm"));
    CHECK(mse(in, out) <= 0.25);
}

TEST_CASE("sparsify with keep_k = 1 leaves every block constant") {
    store_image(path("dc.pgm"), ChannelSet({synthetic(16, 16, 2)}));
    REQUIRE(run("sparsify " + path("dc.pgm") + " " + path("dc_s.pgm") + " --keep 1") == 0);
    const PixelGrid out = load_image(path("dc_s.pgm")).channels[0];
    for (int r0 = 0; r0 < 16; r0 += 8)
        for (int c0 = 0; c0 < 16; c0 += 8)
            for (int r = 0; r < 8; ++r)
                for (int c = 0; c < 8; ++c)
                    CHECK(out.at(r0 + r, c0 + c) == out.at(r0, c0));
}

TEST_CASE("sparsify matches the library composition byte for byte") {
    const PixelGrid img = synthetic(24, 16, 3);
    store_image(path("sp_in.pgm"), ChannelSet({img}));
    REQUIRE(run("sparsify " + path("sp_in.pgm") + " " + path("sp_cli.pgm") + " --keep 8") == 0);

    const PixelGrid expected = clamp_quantize(sparsify_image(img, 8, {8}));
    store_image(path("sp_lib.pgm"), ChannelSet({expected}));
    CHECK(slurp(path("sp_cli.pgm")) == slurp(path("sp_lib.pgm")));
}

TEST_CASE("corrupt in missing mode writes an exact-count mask") {
    store_image(path("c_in.pgm"), ChannelSet({synthetic(16, 16, 4)}));

    REQUIRE(run("corrupt " + path("c_in.pgm") + " " + path("c0.pgm") + " --out-mask " +
                path("c0_mask.pgm") + " --mode missing --density 0 --seed 5") == 0);
    CHECK(load_mask(path("c0_mask.pgm")).all_available());
    CHECK(slurp(path("c0.pgm")) == slurp(path("c_in.pgm")));

    REQUIRE(run("corrupt " + path("c_in.pgm") + " " + path("c75.pgm") + " --out-mask " +
                path("c75_mask.pgm") + " --mode missing --density 0.75 --seed 5") == 0);
    const Mask m = load_mask(path("c75_mask.pgm"));
    CHECK(m.available.size() - m.available_count() == 192); // round(0.75 * 256)

    // The display image renders missing pixels white.
    const PixelGrid display = load_image(path("c75.pgm")).channels[0];
    const PixelGrid original = load_image(path("c_in.pgm")).channels[0];
    for (size_t i = 0; i < display.values.size(); ++i)
        CHECK(display.values[i] == (m.available[i] ? original.values[i] : 255.0));
}

TEST_CASE("corrupt is reproducible for equal seeds") {
    store_image(path("r_in.pgm"), ChannelSet({synthetic(16, 16, 6)}));
    const std::string args = "corrupt " + path("r_in.pgm") + " " + path("r_a.pgm") +
                             " --out-mask " + path("r_am.pgm") +
                             " --mode saltpepper --density 0.3 --seed 42";
    REQUIRE(run(args) == 0);
    const std::string img_a = slurp(path("r_a.pgm"));
    const std::string mask_a = slurp(path("r_am.pgm"));
    REQUIRE(run(args) == 0);
    CHECK(slurp(path("r_a.pgm")) == img_a);
    CHECK(slurp(path("r_am.pgm")) == mask_a);
}

TEST_CASE("parameter and format problems exit with distinct codes") {
    store_image(path("e_in.pgm"), ChannelSet({synthetic(8, 8, 7)}));

    CHECK(run("corrupt " + path("e_in.pgm") + " " + path("e.pgm") + " --density 1.5") == 2);
    CHECK(run("corrupt " + path("e_in.pgm") + " " + path("e.pgm") +
              " --mode missing --density 0.5") == 2); // --out-mask required
    CHECK(run("reconstruct " + path("e_in.pgm") + " " + path("e.pgm")) == 2); // no mask source
    CHECK(run("median " + path("e_in.pgm") + " " + path("e.pgm") + " --window 4") == 2);
    CHECK(run("reconstruct " + path("nonexistent.pgm") + " " + path("e.pgm") +
              " --detect-saltpepper") == 3);

    std::ofstream bad(path("bad.pgm"), std::ios::binary);
    bad << "P5\n8 8\n255\nshort";
    bad.close();
    CHECK(run("metrics " + path("bad.pgm") + " " + path("e_in.pgm")) == 3);

    // Mask dimensions must match the image.
    store_mask(path("small_mask.pgm"), Mask(4, 4, true));
    CHECK(run("reconstruct " + path("e_in.pgm") + " " + path("e.pgm") + " --mask " +
              path("small_mask.pgm")) == 2);
}

TEST_CASE("reconstruct with an all-available mask is the identity") {
    store_image(path("id_in.pgm"), ChannelSet({synthetic(16, 16, 8)}));
    store_mask(path("id_mask.pgm"), Mask(16, 16, true));
    REQUIRE(run("reconstruct " + path("id_in.pgm") + " " + path("id_out.pgm") + " --mask " +
                path("id_mask.pgm")) == 0);
    CHECK(slurp(path("id_out.pgm")) == slurp(path("id_in.pgm")));
}

TEST_CASE("detect-saltpepper on a clean prescaled image is the identity") {
    const PixelGrid clean = prescale_clean_range(synthetic(16, 16, 9));
    store_image(path("p_in.pgm"), ChannelSet({clean}));
    REQUIRE(run("reconstruct " + path("p_in.pgm") + " " + path("p_out.pgm") +
                " --detect-saltpepper") == 0);
    CHECK(slurp(path("p_out.pgm")) == slurp(path("p_in.pgm")));
}

TEST_CASE("the seeded end-to-end pipeline beats the zero-filled baseline by 10 dB") {
    store_image(path("ee_src.pgm"), ChannelSet({synthetic(32, 32, 10)}));
    REQUIRE(run("sparsify " + path("ee_src.pgm") + " " + path("ee_ref.pgm") + " --keep 8") == 0);
    REQUIRE(run("corrupt " + path("ee_ref.pgm") + " " + path("ee_holes.pgm") + " --out-mask " +
                path("ee_mask.pgm") + " --mode missing --density 0.5 --seed 11") == 0);
    REQUIRE(run("reconstruct " + path("ee_holes.pgm") + " " + path("ee_rec.pgm") + " --mask " +
                path("ee_mask.pgm") + " --reference " + path("ee_ref.pgm")) == 0);

    const ChannelSet ref = load_image(path("ee_ref.pgm"));
    const ChannelSet rec = load_image(path("ee_rec.pgm"));
    const Mask mask = load_mask(path("ee_mask.pgm"));
    const ChannelSet baseline(
        {clamp_quantize(init_measurement(ref.channels[0], mask, 0.0))});

    const double psnr_rec = psnr(rec, ref);
    const double psnr_base = psnr(baseline, ref);
    CHECK(psnr_rec >= psnr_base + 10.0);

    // The metrics summary line reports which reference was used.
    CHECK(last_output().find("reference=" + path("ee_ref.pgm")) != std::string::npos);
}

TEST_CASE("reconstruct output and report are byte-stable across reruns") {
    store_image(path("d_src.pgm"), ChannelSet({synthetic(24, 24, 12)}));
    REQUIRE(run("corrupt " + path("d_src.pgm") + " " + path("d_holes.pgm") + " --out-mask " +
                path("d_mask.pgm") + " --mode missing --density 0.4 --seed 13") == 0);

    const std::string args = "reconstruct " + path("d_holes.pgm") + " " + path("d_rec.pgm") +
                             " --mask " + path("d_mask.pgm") + " --report " + path("d_report.txt");
    REQUIRE(run(args) == 0);
    const std::string image1 = slurp(path("d_rec.pgm"));
    const std::string report1 = slurp(path("d_report.txt"));
    REQUIRE(run(args) == 0);
    CHECK(slurp(path("d_rec.pgm")) == image1);
    CHECK(slurp(path("d_report.txt")) == report1);

    // Serial execution reproduces the parallel bytes too.
    REQUIRE(run(args + " --serial") == 0);
    CHECK(slurp(path("d_rec.pgm")) == image1);
    CHECK(slurp(path("d_report.txt")) == report1);

    CHECK(report1.find("# block 0 0 channel=0") != std::string::npos);
    CHECK(report1.find("reason=") != std::string::npos);
}

TEST_CASE("median subcommand matches the library filter") {
    const PixelGrid img = synthetic(16, 16, 14);
    store_image(path("m_in.pgm"), ChannelSet({img}));
    REQUIRE(run("median " + path("m_in.pgm") + " " + path("m_out.pgm") + " --window 5") == 0);
    store_image(path("m_lib.pgm"), ChannelSet({median_filter(img, 5)}));
    CHECK(slurp(path("m_out.pgm")) == slurp(path("m_lib.pgm")));
}

TEST_CASE("metrics subcommand reports mse and psnr") {
    store_image(path("q_a.pgm"), ChannelSet({synthetic(8, 8, 15)}));
    REQUIRE(run("metrics " + path("q_a.pgm") + " " + path("q_a.pgm")) == 0);
    const std::string out = last_output();
    CHECK(out.find("mse=0.000000") != std::string::npos);
    CHECK(out.find("psnr=inf") != std::string::npos);
}

TEST_CASE("color images route through per-channel reconstruction") {
    const PixelGrid r = synthetic(16, 16, 16);
    const PixelGrid g = synthetic(16, 16, 17);
    const PixelGrid b = synthetic(16, 16, 18);
    store_image(path("rgb.ppm"), ChannelSet({r, g, b}));

    REQUIRE(run("corrupt " + path("rgb.ppm") + " " + path("rgb_holes.ppm") + " --out-mask " +
                path("rgb_mask.pgm") + " --mode missing --density 0.3 --seed 19") == 0);
    REQUIRE(run("reconstruct " + path("rgb_holes.ppm") + " " + path("rgb_rec.ppm") + " --mask " +
                path("rgb_mask.pgm") + " --reference " + path("rgb.ppm")) == 0);

    const std::string bytes = slurp(path("rgb_rec.ppm"));
    CHECK(bytes.rfind("P6\n", 0) == 0);
    const ChannelSet rec = load_image(path("rgb_rec.ppm"));
    REQUIRE(rec.channels.size() == 3);
    CHECK(rec.height() == 16);

    // Available pixels survive the pipeline exactly, in every channel.
    const Mask mask = load_mask(path("rgb_mask.pgm"));
    const ChannelSet original = load_image(path("rgb.ppm"));
    for (int ch = 0; ch < 3; ++ch)
        for (size_t i = 0; i < mask.available.size(); ++i)
            if (mask.available[i])
                CHECK(rec.channels[ch].values[i] == original.channels[ch].values[i]);
}

TEST_CASE("color salt-and-pepper corruption hits the same pixels in every channel") {
    const PixelGrid base = prescale_clean_range(synthetic(16, 16, 20));
    store_image(path("csp.ppm"), ChannelSet({base, base, base}));
    REQUIRE(run("corrupt " + path("csp.ppm") + " " + path("csp_noisy.ppm") +
                " --mode saltpepper --density 0.2 --seed 21") == 0);

    const ChannelSet noisy = load_image(path("csp_noisy.ppm"));
    for (size_t i = 0; i < noisy.channels[0].values.size(); ++i) {
        CHECK(noisy.channels[0].values[i] == noisy.channels[1].values[i]);
        CHECK(noisy.channels[1].values[i] == noisy.channels[2].values[i]);
    }

    REQUIRE(run("reconstruct " + path("csp_noisy.ppm") + " " + path("csp_rec.ppm") +
                " --detect-saltpepper --reference " + path("csp.ppm")) == 0);
    const ChannelSet rec = load_image(path("csp_rec.ppm"));
    CHECK(psnr(rec, load_image(path("csp.ppm"))) > 30.0);
}

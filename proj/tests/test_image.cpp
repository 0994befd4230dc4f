#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "csr/image_ops.hpp"
#include "csr/pnm.hpp"
#include "csr/rng.hpp"

using namespace csr;

namespace {

PixelGrid random_grid(SeededRng& rng, int h, int w) {
    PixelGrid g(h, w);
    for (double& v : g.values) v = rng.uniform(0.0, 255.0);
    return g;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

} // namespace

TEST_CASE("tiling covers the grid in row-major block order") {
    SeededRng rng(21);
    const PixelGrid g = random_grid(rng, 16, 16);
    const Mask m(16, 16, true);
    const auto tiles = tile_blocks(g, m, 8);
    REQUIRE(tiles.size() == 4);
    CHECK(tiles[0].row0 == 0);
    CHECK(tiles[0].col0 == 0);
    CHECK(tiles[1].row0 == 0);
    CHECK(tiles[1].col0 == 8);
    CHECK(tiles[2].row0 == 8);
    CHECK(tiles[2].col0 == 0);
    CHECK(tiles[3].row0 == 8);
    CHECK(tiles[3].col0 == 8);
    CHECK(tiles[0].block.at(3, 5) == g.at(3, 5));
    CHECK(tiles[3].block.at(1, 2) == g.at(9, 10));
}

TEST_CASE("an exact-size grid is a single tile") {
    SeededRng rng(22);
    const PixelGrid g = random_grid(rng, 8, 8);
    const auto tiles = tile_blocks(g, Mask(8, 8, true), 8);
    REQUIRE(tiles.size() == 1);
    CHECK(tiles[0].block.values == g.values);
}

TEST_CASE("tile masks restrict the image mask") {
    PixelGrid g(16, 8, 0.0);
    Mask m(16, 8, true);
    m.set(9, 3, false);
    const auto tiles = tile_blocks(g, m, 8);
    REQUIRE(tiles.size() == 2);
    CHECK(tiles[0].mask.all_available());
    CHECK(!tiles[1].mask.at(1, 3));
    CHECK(tiles[1].mask.available_count() == 63);
}

TEST_CASE("untile(tile(grid)) round-trips exactly") {
    SeededRng rng(23);
    const PixelGrid g = random_grid(rng, 24, 16);
    const auto tiles = tile_blocks(g, Mask(24, 16, true), 8);
    std::vector<PlacedBlock> placed;
    for (const auto& t : tiles) placed.push_back({t.block, t.row0, t.col0});
    CHECK(untile_blocks(placed, 24, 16).values == g.values);

    // Assembly is order-independent.
    std::swap(placed[0], placed[placed.size() - 1]);
    CHECK(untile_blocks(placed, 24, 16).values == g.values);
}

TEST_CASE("untile rejects overlaps and gaps") {
    const PixelGrid b(8, 8, 1.0);
    CHECK_THROWS_AS(untile_blocks({{b, 0, 0}, {b, 0, 0}}, 8, 16), dimension_error);
    CHECK_THROWS_AS(untile_blocks({{b, 0, 0}}, 8, 16), dimension_error);
    CHECK_THROWS_AS(untile_blocks({{b, 4, 0}}, 8, 8), dimension_error);
}

TEST_CASE("tiling a non-multiple grid asks the caller to pad") {
    try {
        tile_blocks(PixelGrid(10, 10, 0.0), Mask(10, 10, true), 8);
        FAIL("expected dimension_error");
    } catch (const dimension_error& e) {
        CHECK(std::string(e.what()).find("pad") != std::string::npos);
    }
}

TEST_CASE("padding replicates edges up to the next multiple") {
    SeededRng rng(24);
    const PixelGrid g = random_grid(rng, 10, 10);
    const PaddedImage p = pad_to_multiple(g, Mask(10, 10, true), 8);
    CHECK(p.grid.height == 16);
    CHECK(p.grid.width == 16);
    CHECK(p.orig_height == 10);
    CHECK(p.orig_width == 10);
    CHECK(p.grid.at(12, 3) == g.at(9, 3));
    CHECK(p.grid.at(3, 14) == g.at(3, 9));
    CHECK(p.grid.at(15, 15) == g.at(9, 9));
    CHECK(crop(p.grid, 10, 10).values == g.values);
}

TEST_CASE("padding leaves exact multiples unchanged") {
    SeededRng rng(25);
    const PixelGrid g = random_grid(rng, 240, 240);
    const PaddedImage p = pad_to_multiple(g, Mask(240, 240, true), 8);
    CHECK(p.grid.height == 240);
    CHECK(p.grid.width == 240);
    CHECK(p.grid.values == g.values);
}

TEST_CASE("padded pixels are available, original mask is preserved") {
    PixelGrid g(10, 10, 0.0);
    Mask m(10, 10, true);
    m.set(9, 3, false);
    const PaddedImage p = pad_to_multiple(g, m, 8);
    CHECK(!p.mask.at(9, 3));
    CHECK(p.mask.at(12, 3)); // replicated copy of a missing pixel is still "known padding"
    CHECK(p.mask.available_count() == 16 * 16 - 1);
}

TEST_CASE("clamp_quantize clamps then rounds half away from zero") {
    PixelGrid g(1, 4);
    g.values = {-3.2, 260.0, 127.5, 100.0};
    const PixelGrid q = clamp_quantize(g);
    CHECK(q.values[0] == 0.0);
    CHECK(q.values[1] == 255.0);
    CHECK(q.values[2] == 128.0);
    CHECK(q.values[3] == 100.0);

    PixelGrid bad(1, 1);
    bad.values = {std::nan("")};
    CHECK_THROWS_AS(clamp_quantize(bad), numeric_error);
}

TEST_CASE("P5 payload parses row-major") {
    const std::string path = "t_img_p5.pgm";
    spit(path, std::string("P5\n2 2\n255\n") + std::string("\x00\x80\xff\x07", 4));
    const ChannelSet img = load_image(path);
    REQUIRE(img.channels.size() == 1);
    const PixelGrid& g = img.channels[0];
    CHECK(g.at(0, 0) == 0.0);
    CHECK(g.at(0, 1) == 128.0);
    CHECK(g.at(1, 0) == 255.0);
    CHECK(g.at(1, 1) == 7.0);
    std::remove(path.c_str());
}

TEST_CASE("store(load(f)) is byte-identical for canonical files") {
    const std::string path = "t_img_rt.pgm";
    const std::string canonical = std::string("P5\n3 2\n255\n") + std::string("\x01\x02\x03\x04\x05\x06", 6);
    spit(path, canonical);
    store_image("t_img_rt2.pgm", load_image(path));
    CHECK(slurp("t_img_rt2.pgm") == canonical);
    std::remove(path.c_str());
    std::remove("t_img_rt2.pgm");
}

TEST_CASE("P6 interleaves RGB") {
    const std::string path = "t_img_p6.ppm";
    spit(path, std::string("P6\n1 1\n255\n") + std::string("\x0a\x14\x1e", 3));
    const ChannelSet img = load_image(path);
    REQUIRE(img.channels.size() == 3);
    CHECK(img.channels[0].at(0, 0) == 10.0);
    CHECK(img.channels[1].at(0, 0) == 20.0);
    CHECK(img.channels[2].at(0, 0) == 30.0);

    store_image("t_img_p6rt.ppm", img);
    CHECK(slurp("t_img_p6rt.ppm") == slurp(path));
    std::remove(path.c_str());
    std::remove("t_img_p6rt.ppm");
}

TEST_CASE("header comments and whitespace are accepted") {
    const std::string path = "t_img_comment.pgm";
    spit(path, std::string("P5 # magic\n# a comment line\n  2\t1 #dims\n255\n") + std::string("\x40\x41", 2));
    const ChannelSet img = load_image(path);
    CHECK(img.height() == 1);
    CHECK(img.width() == 2);
    CHECK(img.channels[0].at(0, 1) == 65.0);
    std::remove(path.c_str());
}

TEST_CASE("malformed files are format errors") {
    const std::string path = "t_img_bad.pgm";

    spit(path, "P4\n2 2\n255\n....");
    CHECK_THROWS_AS(load_image(path), format_error);

    spit(path, std::string("P5\n2 2\n127\n") + std::string(4, 'x'));
    CHECK_THROWS_AS(load_image(path), format_error);

    spit(path, std::string("P5\n2 2\n255\n") + std::string(3, 'x'));
    CHECK_THROWS_AS(load_image(path), format_error);

    spit(path, "P5\n0 2\n255\n");
    CHECK_THROWS_AS(load_image(path), format_error);

    std::remove(path.c_str());
    CHECK_THROWS_AS(load_image(path), format_error);
}

TEST_CASE("store_image rejects unquantized values") {
    PixelGrid g(1, 1);
    g.values = {12.5};
    CHECK_THROWS_AS(store_image("t_img_frac.pgm", ChannelSet({g})), format_error);
    g.values = {-1.0};
    CHECK_THROWS_AS(store_image("t_img_frac.pgm", ChannelSet({g})), format_error);
    std::remove("t_img_frac.pgm");
}

TEST_CASE("masks round-trip through PGM") {
    Mask m(2, 3, true);
    m.set(1, 2, false);
    m.set(0, 0, false);
    store_mask("t_img_mask.pgm", m);
    const Mask back = load_mask("t_img_mask.pgm");
    CHECK(back.height == 2);
    CHECK(back.width == 3);
    CHECK(back.available == m.available);
    std::remove("t_img_mask.pgm");
}

TEST_CASE("mask files admit only 0 and 255") {
    spit("t_img_badmask.pgm", std::string("P5\n2 1\n255\n") + std::string("\xff\x07", 2));
    CHECK_THROWS_AS(load_mask("t_img_badmask.pgm"), format_error);
    std::remove("t_img_badmask.pgm");
}

TEST_CASE("channel split/merge round-trips") {
    SeededRng rng(26);
    const ChannelSet rgb({random_grid(rng, 4, 5), random_grid(rng, 4, 5), random_grid(rng, 4, 5)});
    const auto parts = split_channels(rgb);
    REQUIRE(parts.size() == 3);
    const ChannelSet back = merge_channels(parts);
    for (int c = 0; c < 3; ++c) CHECK(back.channels[c].values == rgb.channels[c].values);

    const ChannelSet gray({random_grid(rng, 4, 5)});
    CHECK(split_channels(gray).size() == 1);
    CHECK(merge_channels(split_channels(gray)).channels[0].values == gray.channels[0].values);

    CHECK_THROWS_AS(merge_channels({PixelGrid(2, 2), PixelGrid(2, 2)}), dimension_error);
    CHECK_THROWS_AS(merge_channels({PixelGrid(2, 2), PixelGrid(2, 3), PixelGrid(2, 2)}),
                    dimension_error);
}

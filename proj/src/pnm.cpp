#include "csr/pnm.hpp"

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace csr {

namespace {

// Skips PNM whitespace and '#' comment lines, then reads one unsigned decimal
// token. `field` names the header field for error messages.
long read_header_int(std::istream& in, const std::string& path, const char* field) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f') {
            c = in.get();
        } else {
            break;
        }
    }
    if (c == EOF)
        throw format_error(path + ": truncated header while reading " + std::string(field));
    if (c < '0' || c > '9')
        throw format_error(path + ": invalid " + std::string(field) + " field");
    long value = 0;
    while (c >= '0' && c <= '9') {
        value = value * 10 + (c - '0');
        if (value > 1 << 30) throw format_error(path + ": " + field + " out of range");
        c = in.get();
    }
    if (c != EOF) in.unget();
    return value;
}

} // namespace

ChannelSet load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw format_error(path + ": cannot open file");

    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6'))
        throw format_error(path + ": magic is not P5 or P6");
    const int channels = magic[1] == '5' ? 1 : 3;

    const long width = read_header_int(in, path, "width");
    const long height = read_header_int(in, path, "height");
    const long maxval = read_header_int(in, path, "maxval");
    if (width <= 0) throw format_error(path + ": width must be positive");
    if (height <= 0) throw format_error(path + ": height must be positive");
    if (maxval != 255)
        throw format_error(path + ": maxval is " + std::to_string(maxval) + ", expected 255");

    // Exactly one whitespace byte separates the header from the payload.
    const int sep = in.get();
    if (sep != ' ' && sep != '\t' && sep != '\r' && sep != '\n')
        throw format_error(path + ": missing whitespace after maxval");

    const size_t count = static_cast<size_t>(width) * height * channels;
    std::vector<unsigned char> raw(count);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count));
    if (static_cast<size_t>(in.gcount()) != count)
        throw format_error(path + ": truncated payload, expected " + std::to_string(count) +
                           " bytes, got " + std::to_string(in.gcount()));

    std::vector<PixelGrid> grids(channels,
                                 PixelGrid(static_cast<int>(height), static_cast<int>(width)));
    for (long r = 0; r < height; ++r)
        for (long c = 0; c < width; ++c)
            for (int ch = 0; ch < channels; ++ch)
                grids[ch].at(static_cast<int>(r), static_cast<int>(c)) =
                    raw[(static_cast<size_t>(r) * width + c) * channels + ch];
    return ChannelSet(std::move(grids));
}

void store_image(const std::string& path, const ChannelSet& image) {
    image.validate();
    const int channels = static_cast<int>(image.channels.size());
    const int h = image.height();
    const int w = image.width();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw format_error(path + ": cannot open file for writing");

    out << (channels == 1 ? "P5" : "P6") << "\n" << w << " " << h << "\n" << "255\n";

    std::vector<unsigned char> raw(static_cast<size_t>(h) * w * channels);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            for (int ch = 0; ch < channels; ++ch) {
                const double v = image.channels[ch].at(r, c);
                if (!(v >= 0.0 && v <= 255.0) || v != static_cast<double>(static_cast<int>(v)))
                    throw format_error(path + ": pixel (" + std::to_string(r) + "," +
                                       std::to_string(c) +
                                       ") is not an integral value in [0,255]; quantize first");
                raw[(static_cast<size_t>(r) * w + c) * channels + ch] =
                    static_cast<unsigned char>(v);
            }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw format_error(path + ": write failed");
}

Mask load_mask(const std::string& path) {
    const ChannelSet set = load_image(path);
    if (set.channels.size() != 1)
        throw format_error(path + ": mask must be a grayscale PGM");
    const PixelGrid& g = set.channels[0];
    Mask mask(g.height, g.width);
    for (int r = 0; r < g.height; ++r)
        for (int c = 0; c < g.width; ++c) {
            const double v = g.at(r, c);
            if (v == 255.0)
                mask.set(r, c, true);
            else if (v == 0.0)
                mask.set(r, c, false);
            else
                throw format_error(path + ": mask pixel (" + std::to_string(r) + "," +
                                   std::to_string(c) + ") is " + std::to_string(static_cast<int>(v)) +
                                   ", expected 0 or 255");
        }
    return mask;
}

void store_mask(const std::string& path, const Mask& mask) {
    PixelGrid g(mask.height, mask.width);
    for (int r = 0; r < mask.height; ++r)
        for (int c = 0; c < mask.width; ++c) g.at(r, c) = mask.at(r, c) ? 255.0 : 0.0;
    store_image(path, ChannelSet({g}));
}

} // namespace csr

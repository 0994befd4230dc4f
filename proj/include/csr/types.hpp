#ifndef CSR_TYPES_HPP
#define CSR_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace csr {

// Error taxonomy. The CLI maps these onto distinct exit codes.
struct dimension_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct parameter_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Real-valued 2-D raster. Working precision is double throughout; values are
// integral in [0,255] only right after loading from an 8-bit file or after
// clamp_quantize.
struct PixelGrid {
    int height = 0;
    int width = 0;
    std::vector<double> values;

    PixelGrid() = default;
    PixelGrid(int h, int w, double fill = 0.0)
        : height(h), width(w), values(static_cast<size_t>(h) * w, fill) {
        if (h < 0 || w < 0)
            throw dimension_error("PixelGrid: negative dimensions");
    }

    double& at(int r, int c) { return values[static_cast<size_t>(r) * width + c]; }
    double at(int r, int c) const { return values[static_cast<size_t>(r) * width + c]; }
    size_t pixel_count() const { return static_cast<size_t>(height) * width; }

    bool same_shape(const PixelGrid& o) const {
        return height == o.height && width == o.width;
    }
};

// Per-pixel availability flags paired with a PixelGrid of the same shape.
// true = pixel value known, false = missing (to be reconstructed).
struct Mask {
    int height = 0;
    int width = 0;
    std::vector<uint8_t> available;

    Mask() = default;
    Mask(int h, int w, bool avail = true)
        : height(h), width(w), available(static_cast<size_t>(h) * w, avail ? 1 : 0) {
        if (h < 0 || w < 0)
            throw dimension_error("Mask: negative dimensions");
    }

    bool at(int r, int c) const {
        return available[static_cast<size_t>(r) * width + c] != 0;
    }
    void set(int r, int c, bool v) {
        available[static_cast<size_t>(r) * width + c] = v ? 1 : 0;
    }
    size_t available_count() const {
        size_t n = 0;
        for (uint8_t a : available) n += a ? 1 : 0;
        return n;
    }
    bool all_available() const { return available_count() == available.size(); }
};

// One grid (grayscale) or three (red, green, blue), identical dimensions.
struct ChannelSet {
    std::vector<PixelGrid> channels;

    ChannelSet() = default;
    explicit ChannelSet(std::vector<PixelGrid> ch) : channels(std::move(ch)) {
        validate();
    }

    int height() const { return channels.empty() ? 0 : channels[0].height; }
    int width() const { return channels.empty() ? 0 : channels[0].width; }
    bool is_color() const { return channels.size() == 3; }

    void validate() const {
        if (channels.size() != 1 && channels.size() != 3)
            throw dimension_error("ChannelSet: expected 1 or 3 channels, got " +
                                  std::to_string(channels.size()));
        for (const auto& c : channels)
            if (!c.same_shape(channels[0]))
                throw dimension_error("ChannelSet: channel dimensions differ");
    }
};

// Execution policy for the data-parallel kernels. Serial and Parallel produce
// bit-identical results; Serial exists for scheduling-equivalence tests and
// benchmarking.
enum class ExecPolicy { Serial, Parallel };

} // namespace csr

#endif

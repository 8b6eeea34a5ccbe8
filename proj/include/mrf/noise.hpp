#pragma once

#include <cstdint>
#include <vector>

#include "mrf/image.hpp"

namespace mrf {

/// Impulse-noise parameters: a pixel becomes 0 with probability p_pepper,
/// 255 with probability q_salt, and is left alone otherwise.
struct NoiseSpec {
    double p_pepper = 0.0;
    double q_salt = 0.0;
    std::uint64_t seed = 0;
};

/// Per-pixel corruption flags; flag != 0 means the pixel is missing and its
/// observed value carries no information.
struct PixelMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> flags;

    PixelMask() = default;
    PixelMask(int w, int h, std::uint8_t fill = 0);

    std::size_t size() const { return flags.size(); }
    bool is_missing(int row, int col) const {
        return flags[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(col)] != 0;
    }
    std::size_t missing_count() const;

    bool operator==(const PixelMask&) const = default;
};

/// Draws one uniform variate per pixel in row-major order from a fixed
/// 53-bit mapping of std::mt19937_64 output, so corruptions are
/// reproducible bit-for-bit across platforms.
ImageGrid corrupt(const ImageGrid& image, const NoiseSpec& spec);

/// Marks every pixel sitting at either intensity extreme (0 or 255).
PixelMask detect_min_max(const ImageGrid& image);

struct SuperresProblem {
    ImageGrid grid;
    PixelMask mask;
};

/// Embeds low(r, c) at (r*factor, c*factor) of a factor-scaled grid; every
/// other pixel is zero and masked missing.
SuperresProblem build_superres_problem(const ImageGrid& low, int factor = 2);

/// Keeps every factor-th pixel starting at (0, 0). Plain decimation, no
/// prefiltering, so build_superres_problem(decimate(x, f), f) re-embeds the
/// surviving samples of x exactly.
ImageGrid decimate(const ImageGrid& image, int factor);

/// Mask raster convention: 0 = known, 255 = missing. Any nonzero value
/// reads back as missing.
ImageGrid mask_to_image(const PixelMask& mask);
PixelMask mask_from_image(const ImageGrid& image);

}  // namespace mrf

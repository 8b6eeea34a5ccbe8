#include "mrf/noise.hpp"

#include <random>
#include <stdexcept>

namespace mrf {

PixelMask::PixelMask(int w, int h, std::uint8_t fill) : width(w), height(h) {
    if (w < 1 || h < 1) throw std::invalid_argument("mask dimensions must be at least 1x1");
    flags.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill);
}

std::size_t PixelMask::missing_count() const {
    std::size_t n = 0;
    for (std::uint8_t f : flags) n += f != 0;
    return n;
}

ImageGrid corrupt(const ImageGrid& image, const NoiseSpec& spec) {
    if (spec.p_pepper < 0.0 || spec.q_salt < 0.0 || spec.p_pepper + spec.q_salt > 1.0)
        throw std::invalid_argument("noise probabilities must be non-negative with p + q <= 1");
    ImageGrid out = image;
    std::mt19937_64 rng(spec.seed);
    for (std::uint8_t& v : out.pixels) {
        // Top 53 bits scaled into [0, 1); identical on every platform, which
        // std::uniform_real_distribution does not guarantee.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u < spec.p_pepper)
            v = 0;
        else if (u < spec.p_pepper + spec.q_salt)
            v = kMaxIntensity;
    }
    return out;
}

PixelMask detect_min_max(const ImageGrid& image) {
    PixelMask mask(image.width, image.height);
    for (std::size_t i = 0; i < image.pixels.size(); ++i)
        mask.flags[i] = (image.pixels[i] == 0 || image.pixels[i] == kMaxIntensity) ? 1 : 0;
    return mask;
}

SuperresProblem build_superres_problem(const ImageGrid& low, int factor) {
    if (factor < 2) throw std::invalid_argument("upscale factor must be at least 2");
    SuperresProblem problem;
    problem.grid = ImageGrid(low.width * factor, low.height * factor, 0);
    problem.mask = PixelMask(low.width * factor, low.height * factor, 1);
    for (int r = 0; r < low.height; ++r) {
        for (int c = 0; c < low.width; ++c) {
            const std::size_t i = problem.grid.index(r * factor, c * factor);
            problem.grid.pixels[i] = low.at(r, c);
            problem.mask.flags[i] = 0;
        }
    }
    return problem;
}

ImageGrid decimate(const ImageGrid& image, int factor) {
    if (factor < 1) throw std::invalid_argument("decimation factor must be at least 1");
    const int w = (image.width + factor - 1) / factor;
    const int h = (image.height + factor - 1) / factor;
    ImageGrid out(w, h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) out.at(r, c) = image.at(r * factor, c * factor);
    return out;
}

ImageGrid mask_to_image(const PixelMask& mask) {
    ImageGrid out(mask.width, mask.height);
    for (std::size_t i = 0; i < mask.flags.size(); ++i) out.pixels[i] = mask.flags[i] ? kMaxIntensity : 0;
    return out;
}

PixelMask mask_from_image(const ImageGrid& image) {
    PixelMask mask(image.width, image.height);
    for (std::size_t i = 0; i < image.pixels.size(); ++i) mask.flags[i] = image.pixels[i] != 0 ? 1 : 0;
    return mask;
}

}  // namespace mrf

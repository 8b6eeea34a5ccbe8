#pragma once

#include <string>

#include "mrf/image.hpp"

namespace mrf {

enum class SsimMode {
    Global,    // one set of moments over the whole image
    Windowed,  // mean over 8x8 non-overlapping blocks (trailing partial blocks included)
};

double mse(const ImageGrid& x, const ImageGrid& y);

/// Peak signal-to-noise ratio against peak 255; +infinity for identical
/// images.
double psnr(const ImageGrid& x, const ImageGrid& y);

/// Structural similarity with the usual stabilizers c1 = (0.01*255)^2 and
/// c2 = (0.03*255)^2. Population (biased) moments.
double ssim(const ImageGrid& x, const ImageGrid& y, SsimMode mode = SsimMode::Global);

struct MetricReport {
    double mse = 0.0;
    double psnr = 0.0;
    double ssim = 0.0;
};

MetricReport evaluate(const ImageGrid& x, const ImageGrid& y, SsimMode mode = SsimMode::Global);

/// Two decimals; infinities print as "inf".
std::string format_metric(double value);

}  // namespace mrf

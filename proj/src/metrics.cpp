#include "mrf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace mrf {

namespace {

constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

void require_same_shape(const ImageGrid& x, const ImageGrid& y) {
    if (x.width != y.width || x.height != y.height) throw std::invalid_argument("metric inputs differ in shape");
    if (x.width < 1 || x.height < 1) throw std::invalid_argument("metric inputs are empty");
}

// SSIM of one rectangular region from integer moment sums.
double ssim_block(const ImageGrid& x, const ImageGrid& y, int r0, int c0, int r1, int c1) {
    long long sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (int r = r0; r < r1; ++r) {
        for (int c = c0; c < c1; ++c) {
            const long long a = x.at(r, c), b = y.at(r, c);
            sx += a;
            sy += b;
            sxx += a * a;
            syy += b * b;
            sxy += a * b;
        }
    }
    const double n = static_cast<double>(r1 - r0) * (c1 - c0);
    const double mx = sx / n, my = sy / n;
    const double vx = sxx / n - mx * mx;
    const double vy = syy / n - my * my;
    const double cov = sxy / n - mx * my;
    return ((2.0 * mx * my + kC1) * (2.0 * cov + kC2)) / ((mx * mx + my * my + kC1) * (vx + vy + kC2));
}

}  // namespace

double mse(const ImageGrid& x, const ImageGrid& y) {
    require_same_shape(x, y);
    long long sum = 0;
    for (std::size_t i = 0; i < x.pixels.size(); ++i) {
        const long long d = static_cast<long long>(x.pixels[i]) - static_cast<long long>(y.pixels[i]);
        sum += d * d;
    }
    return static_cast<double>(sum) / static_cast<double>(x.pixels.size());
}

double psnr(const ImageGrid& x, const ImageGrid& y) {
    const double err = mse(x, y);
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / err);
}

double ssim(const ImageGrid& x, const ImageGrid& y, SsimMode mode) {
    require_same_shape(x, y);
    if (mode == SsimMode::Global) return ssim_block(x, y, 0, 0, x.height, x.width);
    double sum = 0.0;
    int blocks = 0;
    for (int r = 0; r < x.height; r += 8) {
        for (int c = 0; c < x.width; c += 8) {
            sum += ssim_block(x, y, r, c, std::min(r + 8, x.height), std::min(c + 8, x.width));
            ++blocks;
        }
    }
    return sum / blocks;
}

MetricReport evaluate(const ImageGrid& x, const ImageGrid& y, SsimMode mode) {
    return MetricReport{mse(x, y), psnr(x, y), ssim(x, y, mode)};
}

std::string format_metric(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

}  // namespace mrf

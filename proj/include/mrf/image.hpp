#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mrf {

inline constexpr int kMaxIntensity = 255;

/// Row-major 8-bit grayscale image, origin at the top-left corner.
/// Intensities live in [0, 255]; dimensions are at least 1x1 once built.
struct ImageGrid {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    ImageGrid() = default;
    ImageGrid(int w, int h, std::uint8_t fill = 0);

    std::size_t size() const { return pixels.size(); }
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(col);
    }
    std::uint8_t at(int row, int col) const { return pixels[index(row, col)]; }
    std::uint8_t& at(int row, int col) { return pixels[index(row, col)]; }
    bool in_bounds(int row, int col) const { return row >= 0 && row < height && col >= 0 && col < width; }

    bool operator==(const ImageGrid&) const = default;
};

struct PixelCoord {
    int row = 0;
    int col = 0;
};

enum class PgmMode { Binary, Ascii };

/// Parses a P2 (ascii) or P5 (binary) graymap. Header comments starting
/// with '#' are skipped. Rejects maxval > 255 and truncated rasters,
/// each with a distinct message.
ImageGrid read_pgm(const std::vector<std::uint8_t>& bytes);

/// Serializes with maxval 255. read_pgm(write_pgm(g, m)) == g for both modes.
std::vector<std::uint8_t> write_pgm(const ImageGrid& grid, PgmMode mode = PgmMode::Binary);

ImageGrid load_pgm(const std::string& path);
void save_pgm(const ImageGrid& grid, const std::string& path, PgmMode mode = PgmMode::Binary);

}  // namespace mrf

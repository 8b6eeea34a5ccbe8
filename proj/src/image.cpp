#include "mrf/image.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mrf {

ImageGrid::ImageGrid(int w, int h, std::uint8_t fill) : width(w), height(h) {
    if (w < 1 || h < 1) throw std::invalid_argument("image dimensions must be at least 1x1");
    pixels.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill);
}

namespace {

// Whitespace-and-comment token scanner over the header (and the P2 raster,
// where comments are equally harmless).
struct TokenReader {
    const std::vector<std::uint8_t>& bytes;
    std::size_t pos = 0;

    bool skip_filler() {
        while (pos < bytes.size()) {
            std::uint8_t c = bytes[pos];
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(c)) {
                ++pos;
            } else {
                break;
            }
        }
        return pos < bytes.size();
    }

    int next_int(const char* what) {
        if (!skip_filler()) throw std::runtime_error(std::string("pgm: missing ") + what);
        long value = 0;
        bool any = false;
        while (pos < bytes.size() && std::isdigit(bytes[pos])) {
            value = value * 10 + (bytes[pos] - '0');
            if (value > 1'000'000'000L) throw std::runtime_error(std::string("pgm: out-of-range ") + what);
            ++pos;
            any = true;
        }
        if (!any) throw std::runtime_error(std::string("pgm: malformed ") + what);
        return static_cast<int>(value);
    }
};

}  // namespace

ImageGrid read_pgm(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
        throw std::runtime_error("pgm: bad magic, expected P2 or P5");
    const bool binary = bytes[1] == '5';

    TokenReader reader{bytes, 2};
    const int width = reader.next_int("width");
    const int height = reader.next_int("height");
    if (width < 1 || height < 1) throw std::runtime_error("pgm: non-positive dimensions");
    if (static_cast<long long>(width) * height > 100'000'000LL)
        throw std::runtime_error("pgm: implausibly large dimensions");
    const int maxval = reader.next_int("maxval");
    if (maxval < 1) throw std::runtime_error("pgm: non-positive maxval");
    if (maxval > kMaxIntensity) throw std::runtime_error("pgm: maxval exceeds 255, deeper rasters unsupported");

    ImageGrid grid(width, height);
    const std::size_t count = grid.size();
    if (binary) {
        // Exactly one whitespace byte separates the maxval from the raster.
        if (reader.pos >= bytes.size() || !std::isspace(bytes[reader.pos]))
            throw std::runtime_error("pgm: missing raster separator");
        ++reader.pos;
        if (bytes.size() - reader.pos < count) throw std::runtime_error("pgm: truncated pixel data");
        for (std::size_t i = 0; i < count; ++i) {
            std::uint8_t v = bytes[reader.pos + i];
            if (v > maxval) throw std::runtime_error("pgm: pixel value exceeds maxval");
            grid.pixels[i] = v;
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            if (!reader.skip_filler()) throw std::runtime_error("pgm: truncated pixel data");
            const int v = reader.next_int("pixel value");
            if (v > maxval) throw std::runtime_error("pgm: pixel value exceeds maxval");
            grid.pixels[i] = static_cast<std::uint8_t>(v);
        }
    }
    return grid;
}

std::vector<std::uint8_t> write_pgm(const ImageGrid& grid, PgmMode mode) {
    if (grid.width < 1 || grid.height < 1) throw std::invalid_argument("pgm: cannot write an empty image");
    char header[48];
    std::snprintf(header, sizeof(header), "P%c\n%d %d\n255\n", mode == PgmMode::Binary ? '5' : '2', grid.width,
                  grid.height);
    std::vector<std::uint8_t> out(header, header + std::string::traits_type::length(header));
    if (mode == PgmMode::Binary) {
        out.insert(out.end(), grid.pixels.begin(), grid.pixels.end());
    } else {
        // Values wrapped at 12 per line keeps every line under the 70-column
        // limit traditional pgm readers enforce.
        char buf[8];
        for (std::size_t i = 0; i < grid.pixels.size(); ++i) {
            int n = std::snprintf(buf, sizeof(buf), "%d", grid.pixels[i]);
            out.insert(out.end(), buf, buf + n);
            out.push_back((i % 12 == 11 || i + 1 == grid.pixels.size()) ? '\n' : ' ');
        }
    }
    return out;
}

ImageGrid load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return read_pgm(bytes);
}

void save_pgm(const ImageGrid& grid, const std::string& path, PgmMode mode) {
    const std::vector<std::uint8_t> bytes = write_pgm(grid, mode);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("short write to " + path);
}

}  // namespace mrf

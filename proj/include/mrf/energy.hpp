#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "mrf/image.hpp"
#include "mrf/noise.hpp"

namespace mrf {

/// First-order grid model over a finite label set (a sorted subset of
/// [0, 255]). The energy of a labeling l is
///
///     E(l) = sum_p D_p(l_p) + lambda * sum_{p~q} min(|l_p - l_q|^k, v_max)
///
/// with D_p(l) = (l - observed_p)^2 for intact pixels and 0 for masked ones,
/// p~q ranging over 4-connected neighbor pairs counted once. All costs are
/// integers, so energies compare exactly.
struct MrfModel {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> labels;  // strictly increasing
    ImageGrid observed;
    PixelMask mask;
    std::int64_t lambda = 5;
    int k = 2;
    std::int64_t v_max = 5;

    // value -> position in labels, -1 when the value is not a label
    std::array<std::int16_t, 256> value_to_index{};
    // value -> index of the nearest label, ties toward the smaller value
    std::array<std::uint8_t, 256> value_to_nearest{};

    int label_count() const { return static_cast<int>(labels.size()); }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(col);
    }
    bool missing(std::size_t flat) const { return mask.flags[flat] != 0; }
};

struct Labeling {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> values;

    bool operator==(const Labeling&) const = default;
};

/// All 256 intensities.
std::vector<std::uint8_t> full_label_range();

/// {0, stride, 2*stride, ...} with 255 appended when the walk misses it, so
/// both extremes stay representable.
std::vector<std::uint8_t> strided_label_range(int stride);

/// Validates shapes and parameters (lambda >= 0, v_max >= 1, k in {1, 2},
/// labels non-empty and strictly increasing; empty labels means all 256).
MrfModel build_model(ImageGrid observed, PixelMask mask, std::int64_t lambda = 5, int k = 2, std::int64_t v_max = 5,
                     std::vector<std::uint8_t> labels = {});

/// (label - observed)^2, or 0 when the pixel is masked. Throws when the
/// label is not in the model's label set or the coordinate is out of bounds.
std::int64_t data_cost(const MrfModel& model, PixelCoord p, std::uint8_t label);

/// min(|lp - lq|^k, v_max), unweighted (the lambda factor is applied where
/// pair terms are summed).
std::int64_t smoothness_cost(const MrfModel& model, std::uint8_t lp, std::uint8_t lq);

std::int64_t total_energy(const MrfModel& model, const Labeling& labeling);

/// 4-connected neighbor pairs, each once: for every pixel in raster order,
/// its right pair then its down pair. Size is h*(w-1) + w*(h-1).
std::vector<std::pair<PixelCoord, PixelCoord>> neighbor_pairs(const MrfModel& model);

/// Snaps every pixel of an image onto the model's label set (nearest label,
/// ties toward the smaller value).
Labeling labeling_from_image(const MrfModel& model, const ImageGrid& image);

ImageGrid labeling_to_image(const Labeling& labeling);

}  // namespace mrf

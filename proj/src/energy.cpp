#include "mrf/energy.hpp"

#include <cstdlib>
#include <stdexcept>

namespace mrf {

std::vector<std::uint8_t> full_label_range() {
    std::vector<std::uint8_t> labels(256);
    for (int v = 0; v < 256; ++v) labels[v] = static_cast<std::uint8_t>(v);
    return labels;
}

std::vector<std::uint8_t> strided_label_range(int stride) {
    if (stride < 1 || stride > 255) throw std::invalid_argument("label stride must be in [1, 255]");
    std::vector<std::uint8_t> labels;
    for (int v = 0; v < 256; v += stride) labels.push_back(static_cast<std::uint8_t>(v));
    if (labels.back() != 255) labels.push_back(255);
    return labels;
}

MrfModel build_model(ImageGrid observed, PixelMask mask, std::int64_t lambda, int k, std::int64_t v_max,
                     std::vector<std::uint8_t> labels) {
    if (observed.width != mask.width || observed.height != mask.height)
        throw std::invalid_argument("observed image and mask differ in shape");
    if (observed.width < 1 || observed.height < 1) throw std::invalid_argument("model needs a non-empty image");
    if (lambda < 0) throw std::invalid_argument("lambda must be non-negative");
    if (v_max < 1) throw std::invalid_argument("v_max must be at least 1");
    if (k != 1 && k != 2) throw std::invalid_argument("k must be 1 or 2");
    if (labels.empty()) labels = full_label_range();
    for (std::size_t i = 1; i < labels.size(); ++i)
        if (labels[i] <= labels[i - 1]) throw std::invalid_argument("labels must be strictly increasing");

    MrfModel model;
    model.width = observed.width;
    model.height = observed.height;
    model.labels = std::move(labels);
    model.observed = std::move(observed);
    model.mask = std::move(mask);
    model.lambda = lambda;
    model.k = k;
    model.v_max = v_max;

    model.value_to_index.fill(-1);
    for (std::size_t i = 0; i < model.labels.size(); ++i)
        model.value_to_index[model.labels[i]] = static_cast<std::int16_t>(i);
    std::size_t nearest = 0;
    for (int v = 0; v < 256; ++v) {
        while (nearest + 1 < model.labels.size() &&
               std::abs(model.labels[nearest + 1] - v) < std::abs(model.labels[nearest] - v))
            ++nearest;
        model.value_to_nearest[v] = static_cast<std::uint8_t>(nearest);
    }
    return model;
}

std::int64_t data_cost(const MrfModel& model, PixelCoord p, std::uint8_t label) {
    if (p.row < 0 || p.row >= model.height || p.col < 0 || p.col >= model.width)
        throw std::out_of_range("data_cost: pixel outside the grid");
    if (model.value_to_index[label] < 0) throw std::invalid_argument("data_cost: label not in the model's label set");
    const std::size_t i = model.index(p.row, p.col);
    if (model.missing(i)) return 0;
    const std::int64_t d = static_cast<std::int64_t>(label) - static_cast<std::int64_t>(model.observed.pixels[i]);
    return d * d;
}

std::int64_t smoothness_cost(const MrfModel& model, std::uint8_t lp, std::uint8_t lq) {
    std::int64_t d = static_cast<std::int64_t>(lp) - static_cast<std::int64_t>(lq);
    if (d < 0) d = -d;
    const std::int64_t v = model.k == 2 ? d * d : d;
    return v < model.v_max ? v : model.v_max;
}

std::int64_t total_energy(const MrfModel& model, const Labeling& labeling) {
    if (labeling.width != model.width || labeling.height != model.height)
        throw std::invalid_argument("labeling shape does not match the model");
    std::int64_t data = 0;
    std::int64_t smooth = 0;
    for (int r = 0; r < model.height; ++r) {
        for (int c = 0; c < model.width; ++c) {
            const std::size_t i = model.index(r, c);
            const std::uint8_t l = labeling.values[i];
            if (!model.missing(i)) {
                const std::int64_t d = static_cast<std::int64_t>(l) - static_cast<std::int64_t>(model.observed.pixels[i]);
                data += d * d;
            }
            if (c + 1 < model.width) smooth += smoothness_cost(model, l, labeling.values[i + 1]);
            if (r + 1 < model.height) smooth += smoothness_cost(model, l, labeling.values[i + model.width]);
        }
    }
    return data + model.lambda * smooth;
}

std::vector<std::pair<PixelCoord, PixelCoord>> neighbor_pairs(const MrfModel& model) {
    std::vector<std::pair<PixelCoord, PixelCoord>> pairs;
    pairs.reserve(static_cast<std::size_t>(model.height) * (model.width - 1) +
                  static_cast<std::size_t>(model.width) * (model.height - 1));
    for (int r = 0; r < model.height; ++r) {
        for (int c = 0; c < model.width; ++c) {
            if (c + 1 < model.width) pairs.push_back({PixelCoord{r, c}, PixelCoord{r, c + 1}});
            if (r + 1 < model.height) pairs.push_back({PixelCoord{r, c}, PixelCoord{r + 1, c}});
        }
    }
    return pairs;
}

Labeling labeling_from_image(const MrfModel& model, const ImageGrid& image) {
    if (image.width != model.width || image.height != model.height)
        throw std::invalid_argument("image shape does not match the model");
    Labeling labeling{model.width, model.height, {}};
    labeling.values.resize(image.pixels.size());
    for (std::size_t i = 0; i < image.pixels.size(); ++i)
        labeling.values[i] = model.labels[model.value_to_nearest[image.pixels[i]]];
    return labeling;
}

ImageGrid labeling_to_image(const Labeling& labeling) {
    ImageGrid image(labeling.width, labeling.height);
    image.pixels = labeling.values;
    return image;
}

}  // namespace mrf

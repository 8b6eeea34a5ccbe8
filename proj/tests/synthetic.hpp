#pragma once

// Deterministic test scenes. The two 512x512 generators imitate the gross
// statistics of classic photographic test material (mean near 125, standard
// deviation near 50, piecewise-smooth regions with moderate fine texture) so
// corruption and restoration behave the way they do on real photographs,
// while staying fully reproducible and free of bundled image files. Pixel
// values keep off the 0/255 extremes so min-max detection flags exactly the
// injected corruption.

#include "mrf/image.hpp"

namespace synth {

/// Harbor scene: bright graded sky over darker rippled water, a dark hull
/// with cabin and mast, a rock shelf, and film grain over everything.
mrf::ImageGrid boat_scene(int width = 512, int height = 512);

/// Still-life scene: overlapping smooth-shaded blobs on a dark cloth
/// background with gentle grain; mostly smooth gradients with soft edges.
mrf::ImageGrid peppers_scene(int width = 512, int height = 512);

/// Small smooth ramp plus a step, handy for quick solver checks.
mrf::ImageGrid gradient_scene(int width, int height);

/// Jittered paving of flat patches whose neighbors sit many gray levels
/// apart. Interiors restore exactly, so solution quality is decided at the
/// borders, where greedy per-pixel descent strands whole pockets at the
/// injected extremes while coordinated optimizers do not.
mrf::ImageGrid mosaic_scene(int width, int height);

}  // namespace synth

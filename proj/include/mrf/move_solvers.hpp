#pragma once

#include <cstdint>
#include <vector>

#include "mrf/energy.hpp"
#include "mrf/maxflow.hpp"

namespace mrf {

enum class LabelOrder {
    Ascending,     // label values in increasing order, swap pairs lexicographic
    SeededRandom,  // one portable Fisher-Yates shuffle of that order per run
};

struct SolverConfig {
    int max_cycles = 10;
    std::int64_t improvement_epsilon = 0;  // stop once a full cycle improves by less than this
    LabelOrder label_order = LabelOrder::Ascending;
    std::uint64_t order_seed = 0;
};

struct TraceSample {
    int cycle = 0;
    std::int64_t energy = 0;
    double seconds = 0.0;
};

/// Energy after each cycle (sample 0 is the starting energy). Move-making
/// solvers only ever accept strict improvements, so the energy column is
/// non-increasing by construction.
struct ConvergenceTrace {
    std::vector<TraceSample> samples;
};

struct SolveResult {
    Labeling labeling;
    ConvergenceTrace trace;
};

struct MoveResult {
    Labeling labeling;
    std::int64_t energy = 0;
};

/// Coordinate descent: raster sweeps where each pixel takes the cheapest
/// label given its four neighbors, ties toward the smallest label value.
/// Stops when a sweep changes nothing or at max_cycles.
SolveResult run_icm(const MrfModel& model, const Labeling& init, const SolverConfig& config);

/// One alpha-expansion: every pixel either keeps its label or switches to
/// alpha, decided by a single minimum cut. Exactly optimal over that move
/// space when V is a metric; for truncated-quadratic V the pair terms are
/// clamped to restore submodularity and the move is only guaranteed not to
/// increase the energy (the result is whichever of cut labeling and input
/// is cheaper). Returned energy is the true energy of the returned labeling.
MoveResult expansion_move(const MrfModel& model, const Labeling& current, std::uint8_t alpha);

/// One alpha-beta swap: pixels currently labeled alpha or beta re-decide
/// between the two by a minimum cut; every other pixel is frozen. Exact
/// over its move space for any symmetric non-negative V.
MoveResult swap_move(const MrfModel& model, const Labeling& current, std::uint8_t alpha, std::uint8_t beta);

/// Cycles expansion moves over all labels, accepting a move only when it
/// strictly lowers the true energy.
SolveResult run_expansion(const MrfModel& model, const Labeling& init, const SolverConfig& config);

/// Cycles swap moves over all unordered label pairs.
SolveResult run_swap(const MrfModel& model, const Labeling& init, const SolverConfig& config);

struct ExpansionGraphStats {
    int pixel_nodes = 0;
    int aux_nodes = 0;  // one per neighbor pair whose endpoints currently disagree
};

/// Assembles the expansion network for one move into `net` (cleared first).
/// Pixel p occupies node p and keeps its label on the source side of the
/// cut, adopting alpha on the sink side; each separated pair adds one
/// auxiliary node carrying the pair's disagreement cost toward the sink.
/// Exposed so tests can audit the construction; expansion_move uses it
/// internally.
ExpansionGraphStats build_expansion_network(const MrfModel& model, const Labeling& current, std::uint8_t alpha,
                                            FlowNetwork& net);

}  // namespace mrf

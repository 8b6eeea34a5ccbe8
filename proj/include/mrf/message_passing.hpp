#pragma once

#include <cstdint>
#include <vector>

#include "mrf/energy.hpp"
#include "mrf/move_solvers.hpp"

namespace mrf {

enum class BpSchedule {
    Sequential,   // forward raster sweep updating right/down, then the reverse for left/up
    Synchronous,  // all directed messages recomputed from the previous pass
};

struct TruncatedPotential {
    std::int64_t lambda = 5;
    int k = 2;
    std::int64_t v_max = 5;
    std::vector<std::uint8_t> labels;  // strictly increasing positions
};

/// One min-sum message: with h = data_vec + sum of incoming (the reverse
/// message is the caller's business to exclude),
///
///     out(j) = min_i [ h(i) + lambda * min(|v_i - v_j|^k, v_max) ]
///
/// computed by a linear-time lower envelope plus a truncation cap, then
/// min-normalized to zero. Integer-exact.
std::vector<std::int64_t> message_update(const std::vector<std::int64_t>& data_vec,
                                         const std::vector<std::vector<std::int64_t>>& incoming,
                                         const TruncatedPotential& pot);

/// Loopy min-sum on the 4-connected grid, messages starting at zero; init
/// only seeds the trace baseline. Runs config.max_cycles passes, stopping
/// early only when a pass leaves every stored message unchanged (an exact
/// fixed point, after which no further pass could alter the decode; on a
/// chain that makes the result the true optimum regardless of the cap).
/// Decode is per-pixel argmin of belief = data + all incoming messages,
/// ties to the smallest label. The trace records the decoded energy after
/// every pass; it is not monotone for either schedule.
SolveResult run_bp(const MrfModel& model, const Labeling& init, const SolverConfig& config, BpSchedule schedule);

struct LowerBoundSample {
    int pass = 0;
    double lower_bound = 0.0;
};

/// Lower bounds are exact half-integers and non-decreasing pass over pass;
/// bound <= optimal energy always, so bound == decoded energy certifies a
/// global optimum.
struct LowerBoundTrace {
    std::vector<LowerBoundSample> samples;
};

struct TrwsResult {
    Labeling labeling;
    ConvergenceTrace trace;
    LowerBoundTrace bound;
};

/// Sequential tree-reweighted min-sum over monotonic row/column chains: a
/// forward raster sweep updates right/down messages, the mirrored reverse
/// sweep left/up, every node handing its outgoing chains a weight-1/2
/// share of the min-normalized belief (all of it where only one chain
/// passes through). Costs are scaled by 2 internally so the halving stays
/// integral. The per-pass lower bound is the sum of the normalization
/// constants the reverse sweep extracts (belief shifts plus message
/// shifts); init seeds the trace baseline, decode is as in run_bp, and
/// passes stop early only at an exact message fixed point.
TrwsResult run_trws(const MrfModel& model, const Labeling& init, const SolverConfig& config);

}  // namespace mrf
